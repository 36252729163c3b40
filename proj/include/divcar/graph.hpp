#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "divcar/error.hpp"
#include "divcar/ingest.hpp"
#include "divcar/rational.hpp"

namespace divcar {

using VertexId = std::uint32_t;

struct Vertex {
  ApiId api;
  IdSet tags;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Undirected edge with u < v. `count` is the number of apps that compose
/// both APIs; the edge length is 1/count.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  std::uint32_t count = 1;

  [[nodiscard]] Rational length() const { return Rational::unit_fraction(count); }
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Neighbor {
  VertexId to = 0;
  std::uint32_t count = 1;

  [[nodiscard]] Rational length() const { return Rational::unit_fraction(count); }
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

class GraphError : public InputError {
 public:
  enum class Kind { NoEdges, VersionMismatch, CorruptPayload, InvalidGraph };

  GraphError(Kind kind, std::string message) : InputError(std::move(message)), kind_(kind) {}
  [[nodiscard]] Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// The weighted API correlation graph: APIs as vertices annotated with their
/// tags, co-usage counts on edges. Immutable once built; concurrent reads are
/// safe.
///
/// Vertices are indexed in ascending ApiId order, adjacency lists are sorted
/// by neighbor index, and the graph is always connected.
class CorrelationGraph {
 public:
  /// Assembles a graph from explicit parts and checks every invariant:
  /// symmetric simple edges with count >= 1, sorted unique ApiIds, and
  /// connectivity. Throws GraphError(InvalidGraph) on violation.
  static CorrelationGraph from_parts(std::vector<Vertex> vertices, std::vector<Edge> edges);

  [[nodiscard]] std::size_t vertex_count() const { return vertices_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
  [[nodiscard]] const std::vector<Vertex>& vertices() const { return vertices_; }
  /// Edges with u < v in lexicographic order.
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }

  [[nodiscard]] std::span<const Neighbor> neighbors(VertexId v) const;
  /// Count on edge (u, v), or nullopt when they are not adjacent.
  [[nodiscard]] std::optional<std::uint32_t> edge_count_between(VertexId u, VertexId v) const;

  /// Vertices tagged with `keyword`, ascending. Empty for unknown keywords.
  [[nodiscard]] std::span<const VertexId> keyword_vertices(std::string_view keyword) const;
  [[nodiscard]] bool has_keyword(std::string_view keyword) const;
  [[nodiscard]] std::optional<VertexId> find_api(std::string_view api) const;

  friend bool operator==(const CorrelationGraph& a, const CorrelationGraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::map<Keyword, std::vector<VertexId>, std::less<>> keyword_index_;
};

struct BuildStats {
  std::size_t apis_total = 0;
  std::size_t apis_with_edges = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  /// Retained vertices / APIs incident to at least one co-usage edge.
  double component_coverage = 0.0;
};

/// Builds the co-usage graph and restricts it to its largest connected
/// component (ties go to the component holding the smallest ApiId).
/// Each app adds 1 to the count of every unordered API pair it composes.
/// Apps named in `excluded_app` contribute nothing.
/// Throws GraphError(NoEdges) when no app composes two or more APIs.
CorrelationGraph build_wacg(const Ecosystem& eco, BuildStats* stats = nullptr,
                            std::optional<std::string_view> excluded_app = std::nullopt);

inline constexpr int kGraphFormatVersion = 1;

/// Versioned JSON document:
/// {"version":1,"vertices":[{"api":..,"tags":[..]}...],"edges":[[u,v,c]...]}.
/// Output bytes are a pure function of the graph.
std::string serialize(const CorrelationGraph& g);
CorrelationGraph deserialize(std::string_view payload);

}  // namespace divcar

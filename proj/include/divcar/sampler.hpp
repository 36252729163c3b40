#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "divcar/graph.hpp"
#include "divcar/query.hpp"

namespace divcar {

/// Vertex-induced view of a CorrelationGraph. Holds a pointer to the parent,
/// which must outlive the view. Unlike the parent, a subgraph need not be
/// connected.
class Subgraph {
 public:
  /// `vertices` are parent indices; they are sorted and deduplicated here.
  Subgraph(const CorrelationGraph& parent, std::vector<VertexId> vertices);
  static Subgraph whole(const CorrelationGraph& parent);

  [[nodiscard]] const CorrelationGraph& parent() const { return *parent_; }
  /// Parent indices, ascending.
  [[nodiscard]] const std::vector<VertexId>& vertices() const { return vertices_; }
  [[nodiscard]] std::size_t size() const { return vertices_.size(); }
  [[nodiscard]] bool contains(VertexId v) const;
  /// Parent edges with both endpoints inside the view, in parent order.
  [[nodiscard]] std::vector<Edge> induced_edges() const;

  friend bool operator==(const Subgraph& a, const Subgraph& b) {
    return a.parent_ == b.parent_ && a.vertices_ == b.vertices_;
  }

 private:
  const CorrelationGraph* parent_;
  std::vector<VertexId> vertices_;
};

inline constexpr std::uint64_t kDefaultSeed = 20240607;

struct SampleConfig {
  std::size_t z = 100;
  std::size_t p = 100;
  std::uint64_t seed = kDefaultSeed;
  std::size_t max_stall_steps = 100;
};

class SamplerError : public InputError {
 public:
  SamplerError(std::string message, std::vector<Keyword> keywords)
      : InputError(std::move(message)), keywords_(std::move(keywords)) {}
  /// Query keywords that tag no vertex of the graph.
  [[nodiscard]] const std::vector<Keyword>& keywords() const { return keywords_; }

 private:
  std::vector<Keyword> keywords_;
};

/// Union of keyword_vertices over the query, ascending. Throws SamplerError
/// listing every keyword that tags no vertex.
std::vector<VertexId> keyword_nodes(const CorrelationGraph& g, const Query& q);

/// Seed of the walk that produces sample `index`. Depends only on
/// (seed, index), so samples can be generated in any order or in parallel.
std::uint64_t sample_seed(std::uint64_t seed, std::size_t index);

/// One random-walk sample: start at a uniformly chosen keyword node, step to
/// uniformly chosen neighbors (edge weights ignored) and collect newly seen
/// vertices until min(p, |V|) are held. After `max_stall_steps` consecutive
/// steps without a new vertex the walk teleports to a random keyword node.
Subgraph sample_subgraph(const CorrelationGraph& g, std::span<const VertexId> keyword_nodes, const SampleConfig& cfg,
                         std::size_t index);

/// z samples for the query; `jobs` workers, output independent of `jobs`.
std::vector<Subgraph> sample_subgraphs(const CorrelationGraph& g, const Query& q, const SampleConfig& cfg,
                                       std::size_t jobs = 1);

/// For each subgraph, the query keywords tagged on at least one of its vertices.
std::vector<std::vector<Keyword>> coverage_report(std::span<const Subgraph> subgraphs, const Query& q);

}  // namespace divcar

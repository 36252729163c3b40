#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "divcar/graph.hpp"
#include "divcar/query.hpp"
#include "divcar/sampler.hpp"
#include "divcar/steiner.hpp"

namespace divcar {

inline constexpr std::size_t kOracleMaxVertices = 14;

class OracleTooLarge : public InputError {
 public:
  explicit OracleTooLarge(std::size_t vertices)
      : InputError("oracle supports at most " + std::to_string(kOracleMaxVertices) + " vertices, got " +
                   std::to_string(vertices)) {}
};

/// Brute-force minimum group Steiner tree for small graphs.
///
/// Enumerates every vertex subset that covers the query and induces a
/// connected subgraph, and scores it by the weight of a minimum spanning
/// tree of that induced subgraph. The optimal tree's vertex set is one of
/// the candidates and its weight equals that set's MST weight, so the
/// minimum over subsets is the optimum. Ties go to the lexicographically
/// smallest sorted vertex list. Shares no code with search_min_gst.
std::optional<SteinerTree> oracle_exact(const Subgraph& g, const Query& q,
                                        std::size_t max_vertices = kOracleMaxVertices);
std::optional<SteinerTree> oracle_exact(const CorrelationGraph& g, const Query& q,
                                        std::size_t max_vertices = kOracleMaxVertices);

struct RandomInstanceShape {
  std::size_t min_vertices = 1;
  std::size_t max_vertices = 10;
  std::size_t max_query_width = 3;
  double min_density = 0.3;
  double max_density = 0.8;
  std::uint32_t max_count = 5;
};

struct RandomInstance {
  CorrelationGraph graph;
  Query query;
};

/// Small connected random graph with random tags and a query drawn from the
/// tag pool; a pure function of (seed, shape). Vertex count, density, edge
/// counts and query width are uniform over the shape's ranges.
RandomInstance make_random_instance(std::uint64_t seed, const RandomInstanceShape& shape = {});

}  // namespace divcar

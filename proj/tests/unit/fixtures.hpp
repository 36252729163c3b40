#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "divcar/graph.hpp"
#include "divcar/ingest.hpp"
#include "divcar/query.hpp"

namespace divcar::test {

inline CorrelationGraph make_graph(std::vector<std::pair<std::string, IdSet>> vertices, std::vector<Edge> edges) {
  std::vector<Vertex> vs;
  for (auto& [api, tags] : vertices) vs.push_back({api, make_id_set(std::move(tags))});
  return CorrelationGraph::from_parts(std::move(vs), std::move(edges));
}

// Ten-vertex correlation graph in the spirit of the illustrative example:
// A3 carries {q1, q4, q12}, A0 carries {q7}, and the A0-A3 pair was
// composed four times. For {q1, q3, q7} two trees of length 1 exist,
// {A5, A1, A2} and {A5, A1, A0}; for {q1, q2, q3, q5} the only optimum
// is {A5, A1, A2}.
inline CorrelationGraph illustrative_graph() {
  return make_graph(
      {
          {"A0", {"q7"}},
          {"A1", {"q1"}},
          {"A2", {"q2", "q7"}},
          {"A3", {"q1", "q4", "q12"}},
          {"A4", {"q6"}},
          {"A5", {"q3", "q5"}},
          {"A6", {"q8"}},
          {"A7", {"q9"}},
          {"A8", {"q10"}},
          {"A9", {"q11"}},
      },
      {
          {0, 1, 2},
          {0, 3, 4},
          {1, 2, 2},
          {1, 5, 2},
          {2, 4, 1},
          {3, 4, 1},
          {4, 6, 3},
          {5, 6, 1},
          {6, 7, 2},
          {7, 8, 5},
          {8, 9, 1},
      });
}

// v0 - v1 - ... - v(n-1) with the given counts; only the ends are tagged.
inline CorrelationGraph path_graph(const std::vector<std::uint32_t>& counts) {
  std::vector<std::pair<std::string, IdSet>> vs;
  const auto n = counts.size() + 1;
  for (std::size_t i = 0; i < n; ++i) {
    IdSet tags;
    if (i == 0) tags = {"left"};
    if (i + 1 == n) tags = {"right"};
    vs.push_back({"p" + std::to_string(i), tags});
  }
  std::vector<Edge> es;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    es.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1), counts[i]});
  }
  return make_graph(std::move(vs), std::move(es));
}

inline Ecosystem parse(const std::string& apis, const std::string& apps) {
  std::istringstream a(apis);
  std::istringstream b(apps);
  return parse_corpus(a, b);
}

}  // namespace divcar::test

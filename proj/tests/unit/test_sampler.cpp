#include <doctest.h>

#include <algorithm>
#include <set>

#include "divcar/eval.hpp"
#include "divcar/sampler.hpp"
#include "fixtures.hpp"

using namespace divcar;

namespace {

// Connected synthetic graph with a few hundred vertices.
const CorrelationGraph& corpus_graph() {
  static const CorrelationGraph g = build_wacg(generate_corpus({}));
  return g;
}

bool connected_within(const Subgraph& s, VertexId from, VertexId to) {
  const auto& g = s.parent();
  std::set<VertexId> seen{from};
  std::vector<VertexId> stack{from};
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    for (const auto& nb : g.neighbors(v)) {
      if (s.contains(nb.to) && seen.insert(nb.to).second) stack.push_back(nb.to);
    }
  }
  return false;
}

}  // namespace

TEST_CASE("keyword nodes list every tagged vertex and reject unknown keywords") {
  const auto g = divcar::test::illustrative_graph();
  CHECK(keyword_nodes(g, Query::make({"q1", "q7"})) == std::vector<VertexId>{0, 1, 2, 3});
  try {
    keyword_nodes(g, Query::make({"q1", "zz", "yy"}));
    FAIL("expected SamplerError");
  } catch (const SamplerError& e) {
    CHECK(e.keywords() == std::vector<Keyword>{"yy", "zz"});
  }
}

TEST_CASE("a sample as large as the graph is the whole graph") {
  const auto g = divcar::test::illustrative_graph();
  const auto q = Query::make({"q1", "q3"});
  SampleConfig cfg{.z = 3, .p = 10};
  for (const auto& s : sample_subgraphs(g, q, cfg)) CHECK(s == Subgraph::whole(g));
  cfg.p = 1000;
  for (const auto& s : sample_subgraphs(g, q, cfg)) CHECK(s.size() == g.vertex_count());
}

TEST_CASE("samples have exactly min(p, |V|) vertices and are walk-connected to a keyword node") {
  const auto& g = corpus_graph();
  const auto q = Query::make({"kw01", "kw02", "kw03"});
  const auto nodes = keyword_nodes(g, q);
  for (const std::size_t p : {1u, 5u, 50u, 120u}) {
    const auto samples = sample_subgraphs(g, q, {.z = 12, .p = p, .seed = 99});
    REQUIRE(samples.size() == 12);
    for (const auto& s : samples) {
      CHECK(s.size() == std::min(p, g.vertex_count()));
      CHECK(std::is_sorted(s.vertices().begin(), s.vertices().end()));
      // Without teleports, every vertex is reachable inside the sample from
      // the start node; with them, from some keyword node.
      for (const auto v : s.vertices()) {
        const bool reached = std::any_of(nodes.begin(), nodes.end(), [&](VertexId k) {
          return s.contains(k) && connected_within(s, k, v);
        });
        CHECK(reached);
      }
    }
  }
}

TEST_CASE("sampling is a pure function of seed and index") {
  const auto& g = corpus_graph();
  const auto q = Query::make({"kw05", "kw11"});
  const SampleConfig cfg{.z = 20, .p = 40, .seed = 5};
  const auto serial = sample_subgraphs(g, q, cfg, 1);
  CHECK(sample_subgraphs(g, q, cfg, 4) == serial);
  CHECK(sample_subgraphs(g, q, cfg, 1) == serial);

  // The first 10 samples of a 20-sample run are the 10-sample run.
  auto small = cfg;
  small.z = 10;
  const auto prefix = sample_subgraphs(g, q, small);
  CHECK(std::equal(prefix.begin(), prefix.end(), serial.begin()));

  // Individual samples can be drawn out of order.
  const auto nodes = keyword_nodes(g, q);
  CHECK(sample_subgraph(g, nodes, cfg, 17) == serial[17]);

  auto other = cfg;
  other.seed = 6;
  CHECK(sample_subgraphs(g, q, other) != serial);
}

TEST_CASE("a walk stuck in a small component teleports instead of looping") {
  // Keyword vertices sit at the two ends of a long path; a walk from either
  // end must still reach p distinct vertices.
  const auto g = divcar::test::path_graph({1, 1, 1, 1, 1, 1, 1, 1});
  const auto q = Query::make({"left", "right"});
  const auto samples = sample_subgraphs(g, q, {.z = 30, .p = 6, .seed = 1, .max_stall_steps = 2});
  for (const auto& s : samples) CHECK(s.size() == 6);
}

TEST_CASE("coverage report lists the query keywords present per sample") {
  const auto g = divcar::test::path_graph({1, 1, 1, 1});
  const auto q = Query::make({"left", "right"});
  const std::vector<Subgraph> subs{Subgraph(g, {0, 1}), Subgraph(g, {3, 4}), Subgraph(g, {0, 4})};
  const auto report = coverage_report(subs, q);
  CHECK(report == std::vector<std::vector<Keyword>>{{"left"}, {"right"}, {"left", "right"}});
}

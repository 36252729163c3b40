#include <doctest.h>

#include <random>

#include "divcar/oracle.hpp"
#include "divcar/sampler.hpp"
#include "divcar/steiner.hpp"
#include "fixtures.hpp"

using namespace divcar;
using divcar::test::illustrative_graph;
using divcar::test::make_graph;
using divcar::test::path_graph;

TEST_CASE("a vertex carrying every keyword is a zero-length tree") {
  const auto g = illustrative_graph();
  const auto t = search_min_gst(g, Query::make({"q1", "q4", "q12"}));
  REQUIRE(t);
  CHECK(t->vertices == std::vector<VertexId>{3});
  CHECK(t->edges.empty());
  CHECK(t->total_length.is_zero());
  CHECK(tree_compatibility(*t).is_max());
}

TEST_CASE("the two optimal trees of the illustrative example") {
  const auto g = illustrative_graph();
  const auto q = Query::make({"q1", "q3", "q7"});
  const auto t = search_min_gst(g, q);
  REQUIRE(t);
  CHECK(t->total_length == Rational(1, 1));
  const bool via_a0 = t->vertices == std::vector<VertexId>{0, 1, 5};
  const bool via_a2 = t->vertices == std::vector<VertexId>{1, 2, 5};
  CHECK((via_a0 || via_a2));
  CHECK(check_tree(Subgraph::whole(g), q, *t).empty());
  CHECK(t->covered == q.full_mask());

  // Removing A0 leaves only the A2 tree; removing A2 leaves only the A0 tree.
  const auto without_a0 = search_min_gst(Subgraph(g, {1, 2, 3, 4, 5, 6}), q);
  REQUIRE(without_a0);
  CHECK(without_a0->vertices == std::vector<VertexId>{1, 2, 5});
  CHECK(without_a0->edges == std::vector<Edge>{{1, 2, 2}, {1, 5, 2}});
  const auto without_a2 = search_min_gst(Subgraph(g, {0, 1, 3, 4, 5, 6}), q);
  REQUIRE(without_a2);
  CHECK(without_a2->vertices == std::vector<VertexId>{0, 1, 5});
}

TEST_CASE("unique optimum for four keywords") {
  const auto g = illustrative_graph();
  const auto t = search_min_gst(g, Query::make({"q1", "q2", "q3", "q5"}));
  REQUIRE(t);
  CHECK(t->vertices == std::vector<VertexId>{1, 2, 5});
  CHECK(t->total_length == Rational(1, 1));
}

TEST_CASE("the shortest of two keyword pairs is a single edge of count 4") {
  const auto g = illustrative_graph();
  const auto t = search_min_gst(g, Query::make({"q4", "q7"}));
  REQUIRE(t);
  CHECK(t->edges == std::vector<Edge>{{0, 3, 4}});
  CHECK(t->total_length == Rational(1, 4));
  CHECK(tree_compatibility(*t).value() == Rational(4, 1));
}

TEST_CASE("path lengths add up exactly") {
  // 1/2 + 1/3 + 1/6 + 1/4 = 5/4
  const auto g = path_graph({2, 3, 6, 4});
  const auto t = search_min_gst(g, Query::make({"left", "right"}));
  REQUIRE(t);
  CHECK(t->total_length == Rational(5, 4));
  CHECK(t->vertices.size() == 5);
  CHECK(t->edges.size() == 4);
}

TEST_CASE("a shortcut beats a path with fewer but heavier edges") {
  // left - m1 - m2 - right, each count 6 (total 1/2), versus left - right
  // directly with count 1 (total 1).
  const auto g = make_graph({{"a", {"left"}}, {"b", {}}, {"c", {}}, {"d", {"right"}}},
                            {{0, 1, 6}, {0, 3, 1}, {1, 2, 6}, {2, 3, 6}});
  const auto t = search_min_gst(g, Query::make({"left", "right"}));
  REQUIRE(t);
  CHECK(t->total_length == Rational(1, 2));
  CHECK(t->vertices == std::vector<VertexId>{0, 1, 2, 3});
}

TEST_CASE("disconnected keyword holders in a sample give no tree") {
  const auto g = path_graph({1, 1, 1});
  const auto q = Query::make({"left", "right"});
  CHECK_FALSE(search_min_gst(Subgraph(g, {0, 1, 3}), q).has_value());
  CHECK_FALSE(search_min_gst(Subgraph(g, {0, 1, 2}), q).has_value());
  CHECK_THROWS_AS(search_min_gst_checked(Subgraph(g, {0, 1, 2}), q), KeywordUncoveredInGraph);
  CHECK(uncovered_keywords(Subgraph(g, {0, 1}), q) == std::vector<Keyword>{"right"});
}

TEST_CASE("check_tree reports broken trees") {
  const auto g = path_graph({2, 2});
  const auto q = Query::make({"left", "right"});
  const auto whole = Subgraph::whole(g);
  auto t = *search_min_gst(g, q);
  REQUIRE(check_tree(whole, q, t).empty());

  auto wrong_length = t;
  wrong_length.total_length = Rational(1, 1) + Rational(1, 1);
  CHECK_FALSE(check_tree(whole, q, wrong_length).empty());

  auto missing_edge = t;
  missing_edge.edges.pop_back();
  missing_edge.total_length = Rational(1, 2);
  CHECK_FALSE(check_tree(whole, q, missing_edge).empty());

  auto wrong_count = t;
  wrong_count.edges[0].count = 3;
  CHECK_FALSE(check_tree(whole, q, wrong_count).empty());

  // A dangling untagged leaf is not allowed.
  const auto g2 = make_graph({{"a", {"left"}}, {"b", {"right"}}, {"c", {}}}, {{0, 1, 1}, {1, 2, 1}});
  SteinerTree extra{0, {0, 1, 2}, {{0, 1, 1}, {1, 2, 1}}, Rational(2, 1), q.full_mask()};
  CHECK_FALSE(check_tree(Subgraph::whole(g2), q, extra).empty());
}

TEST_CASE("settled weights never decrease") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = make_random_instance(seed, {.max_vertices = 12, .max_query_width = 4});
    Rational last;
    bool monotone = true;
    search_min_gst(Subgraph::whole(inst.graph), inst.query, [&](VertexId, KeywordMask, const Rational& w) {
      if (w < last) monotone = false;
      last = w;
    });
    CHECK(monotone);
  }
}

TEST_CASE("search agrees with the oracle on seeded random instances") {
  std::size_t feasible = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto inst = make_random_instance(seed);
    const auto found = search_min_gst(inst.graph, inst.query);
    const auto expected = oracle_exact(inst.graph, inst.query);
    REQUIRE(found.has_value() == expected.has_value());
    if (!found) continue;
    ++feasible;
    CHECK(found->total_length == expected->total_length);
    CHECK(check_tree(Subgraph::whole(inst.graph), inst.query, *found).empty());
  }
  CHECK(feasible > 150);
}

TEST_CASE("a subgraph optimum is never lighter than the parent optimum") {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = make_random_instance(seed, {.min_vertices = 6, .max_vertices = 12});
    const auto parent = search_min_gst(inst.graph, inst.query);
    std::vector<VertexId> keep;
    for (VertexId v = 0; v < inst.graph.vertex_count(); ++v) {
      if (rng() % 3 != 0) keep.push_back(v);
    }
    const auto sub = search_min_gst(Subgraph(inst.graph, keep), inst.query);
    if (sub) {
      REQUIRE(parent);
      CHECK(parent->total_length <= sub->total_length);
    }
  }
}

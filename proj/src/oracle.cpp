#include "divcar/oracle.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <random>

namespace divcar {

std::optional<SteinerTree> oracle_exact(const Subgraph& g, const Query& q, std::size_t max_vertices) {
  const auto& vs = g.vertices();
  const auto n = vs.size();
  if (n > std::min(max_vertices, kOracleMaxVertices)) throw OracleTooLarge(n);
  const auto& parent = g.parent();

  // Dense count matrix in local indices; 0 = no edge.
  std::vector<std::uint32_t> count(n * n, 0);
  std::vector<KeywordMask> masks(n);
  for (std::size_t i = 0; i < n; ++i) {
    masks[i] = q.mask_of(parent.vertex(vs[i]).tags);
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) count[i * n + j] = parent.edge_count_between(vs[i], vs[j]).value_or(0);
    }
  }

  std::optional<SteinerTree> best;
  std::vector<std::size_t> members;
  for (std::uint32_t subset = 1; subset < (1u << n); ++subset) {
    KeywordMask covered = 0;
    members.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if ((subset >> i) & 1u) {
        members.push_back(i);
        covered |= masks[i];
      }
    }
    if (covered != q.full_mask()) continue;

    // Prim's algorithm restricted to the subset; also detects disconnection.
    const auto m = members.size();
    std::vector<char> in_tree(m, 0);
    std::vector<std::optional<Rational>> key(m);
    std::vector<std::size_t> link(m, 0);
    key[0] = Rational::zero();
    Rational total;
    std::vector<Edge> edges;
    bool connected = true;
    for (std::size_t step = 0; step < m; ++step) {
      std::optional<std::size_t> pick;
      for (std::size_t i = 0; i < m; ++i) {
        if (in_tree[i] || !key[i]) continue;
        if (!pick || *key[i] < *key[*pick]) pick = i;
      }
      if (!pick) {
        connected = false;
        break;
      }
      in_tree[*pick] = 1;
      total += *key[*pick];
      if (step > 0) {
        const auto a = vs[members[*pick]];
        const auto b = vs[members[link[*pick]]];
        edges.push_back({std::min(a, b), std::max(a, b), count[members[*pick] * n + members[link[*pick]]]});
      }
      for (std::size_t i = 0; i < m; ++i) {
        const auto c = count[members[*pick] * n + members[i]];
        if (in_tree[i] || c == 0) continue;
        const auto len = Rational::unit_fraction(c);
        if (!key[i] || len < *key[i]) {
          key[i] = len;
          link[i] = *pick;
        }
      }
    }
    if (!connected) continue;

    std::vector<VertexId> vertex_list;
    for (const auto i : members) vertex_list.push_back(vs[i]);
    const bool better = !best || total < best->total_length ||
                        (total == best->total_length && vertex_list < best->vertices);
    if (!better) continue;
    std::sort(edges.begin(), edges.end());
    best = SteinerTree{vertex_list.front(), std::move(vertex_list), std::move(edges), total, q.full_mask()};
  }
  return best;
}

std::optional<SteinerTree> oracle_exact(const CorrelationGraph& g, const Query& q, std::size_t max_vertices) {
  return oracle_exact(Subgraph::whole(g), q, max_vertices);
}

RandomInstance make_random_instance(std::uint64_t seed, const RandomInstanceShape& shape) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  const auto n = uniform(std::max<std::size_t>(shape.min_vertices, 1), std::max(shape.max_vertices, shape.min_vertices));
  const auto r = uniform(1, std::max<std::size_t>(shape.max_query_width, 1));
  const double density = std::uniform_real_distribution<double>(shape.min_density, shape.max_density)(rng);

  // Keyword pool slightly larger than the query so some tags are irrelevant.
  std::vector<std::string> pool;
  for (std::size_t k = 0; k < r + 2; ++k) pool.push_back("k" + std::to_string(k));

  std::vector<Vertex> vertices;
  std::bernoulli_distribution tagged(0.3);
  for (std::size_t i = 0; i < n; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "v%02zu", i);
    IdSet tags;
    for (const auto& k : pool) {
      if (tagged(rng)) tags.push_back(k);
    }
    vertices.push_back({id, std::move(tags)});
  }

  std::vector<Edge> edges;
  std::vector<std::size_t> component(n);
  std::iota(component.begin(), component.end(), 0);
  auto find = [&](std::size_t x) {
    while (component[x] != x) x = component[x] = component[component[x]];
    return x;
  };
  std::bernoulli_distribution present(density);
  auto random_count = [&] { return static_cast<std::uint32_t>(uniform(1, std::max<std::uint32_t>(shape.max_count, 1))); };
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (!present(rng)) continue;
      edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), random_count()});
      component[find(v)] = find(u);
    }
  }
  // Stitch remaining components onto vertex 0's component.
  for (std::size_t v = 1; v < n; ++v) {
    if (find(v) == find(0)) continue;
    const auto u = uniform(0, v - 1);
    if (find(u) == find(v)) continue;
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), random_count()});
    component[find(v)] = find(u);
  }
  for (std::size_t v = 1; v < n; ++v) {
    if (find(v) != find(0)) {
      edges.push_back({0, static_cast<VertexId>(v), random_count()});
      component[find(v)] = find(0);
    }
  }

  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(r);
  return {CorrelationGraph::from_parts(std::move(vertices), std::move(edges)), Query::make(std::move(pool))};
}

}  // namespace divcar

#include "divcar/sampler.hpp"

#include <algorithm>
#include <random>

#include "divcar/parallel.hpp"

namespace divcar {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

template <typename Rng>
std::size_t uniform_below(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace

Subgraph::Subgraph(const CorrelationGraph& parent, std::vector<VertexId> vertices) : parent_(&parent) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  if (!vertices.empty() && vertices.back() >= parent.vertex_count()) throw InputError("subgraph vertex out of range");
  vertices_ = std::move(vertices);
}

Subgraph Subgraph::whole(const CorrelationGraph& parent) {
  std::vector<VertexId> all(parent.vertex_count());
  for (VertexId v = 0; v < all.size(); ++v) all[v] = v;
  return Subgraph(parent, std::move(all));
}

bool Subgraph::contains(VertexId v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

std::vector<Edge> Subgraph::induced_edges() const {
  std::vector<Edge> out;
  for (const auto u : vertices_) {
    for (const auto& nb : parent_->neighbors(u)) {
      if (u < nb.to && contains(nb.to)) out.push_back({u, nb.to, nb.count});
    }
  }
  return out;
}

std::vector<VertexId> keyword_nodes(const CorrelationGraph& g, const Query& q) {
  std::vector<VertexId> nodes;
  std::vector<Keyword> missing;
  for (const auto& k : q.keywords()) {
    const auto vs = g.keyword_vertices(k);
    if (vs.empty()) missing.push_back(k);
    nodes.insert(nodes.end(), vs.begin(), vs.end());
  }
  if (!missing.empty()) {
    std::string msg = "keywords cover no vertex:";
    for (const auto& k : missing) msg += " " + k;
    throw SamplerError(msg, std::move(missing));
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

std::uint64_t sample_seed(std::uint64_t seed, std::size_t index) {
  return splitmix64(splitmix64(seed) ^ (0xd1b54a32d192ed03ull * (static_cast<std::uint64_t>(index) + 1)));
}

Subgraph sample_subgraph(const CorrelationGraph& g, std::span<const VertexId> keyword_nodes, const SampleConfig& cfg,
                         std::size_t index) {
  if (cfg.p == 0) throw InputError("sample size p must be >= 1");
  if (keyword_nodes.empty()) throw InputError("no keyword nodes to start a walk from");
  const auto n = g.vertex_count();
  const auto target = std::min(cfg.p, n);
  if (target == n) return Subgraph::whole(g);

  std::mt19937_64 rng(sample_seed(cfg.seed, index));
  std::vector<char> seen(n, 0);
  std::vector<VertexId> sampled;
  sampled.reserve(target);
  auto visit = [&](VertexId v) {
    if (seen[v]) return false;
    seen[v] = 1;
    sampled.push_back(v);
    return true;
  };

  VertexId current = keyword_nodes[uniform_below(rng, keyword_nodes.size())];
  visit(current);
  const auto max_stall = std::max<std::size_t>(cfg.max_stall_steps, 1);
  std::size_t stall = 0;
  while (sampled.size() < target) {
    const auto adj = g.neighbors(current);
    current = adj[uniform_below(rng, adj.size())].to;
    if (visit(current)) {
      stall = 0;
      continue;
    }
    if (++stall >= max_stall) {
      current = keyword_nodes[uniform_below(rng, keyword_nodes.size())];
      visit(current);
      stall = 0;
    }
  }
  return Subgraph(g, std::move(sampled));
}

std::vector<Subgraph> sample_subgraphs(const CorrelationGraph& g, const Query& q, const SampleConfig& cfg,
                                       std::size_t jobs) {
  if (cfg.z == 0) throw InputError("sampling times z must be >= 1");
  const auto nodes = keyword_nodes(g, q);
  std::vector<std::optional<Subgraph>> slots(cfg.z);
  parallel_for(cfg.z, jobs, [&](std::size_t i) { slots[i].emplace(sample_subgraph(g, nodes, cfg, i)); });
  std::vector<Subgraph> out;
  out.reserve(cfg.z);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<std::vector<Keyword>> coverage_report(std::span<const Subgraph> subgraphs, const Query& q) {
  std::vector<std::vector<Keyword>> out;
  out.reserve(subgraphs.size());
  for (const auto& sg : subgraphs) {
    KeywordMask covered = 0;
    for (const auto v : sg.vertices()) covered |= q.mask_of(sg.parent().vertex(v).tags);
    out.push_back(q.keywords_in(covered));
  }
  return out;
}

}  // namespace divcar

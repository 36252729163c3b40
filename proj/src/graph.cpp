#include "divcar/graph.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include <json.hpp>

namespace divcar {
namespace {

[[noreturn]] void invalid(const std::string& why) { throw GraphError(GraphError::Kind::InvalidGraph, why); }

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }

  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[b] = a;  // the smaller index stays the representative
  }

  std::vector<std::uint32_t> parent;
};

}  // namespace

CorrelationGraph CorrelationGraph::from_parts(std::vector<Vertex> vertices, std::vector<Edge> edges) {
  const auto n = vertices.size();
  if (n == 0) invalid("graph has no vertices");
  for (std::size_t i = 0; i < n; ++i) {
    if (vertices[i].api.empty()) invalid("vertex with empty api id");
    if (i > 0 && !(vertices[i - 1].api < vertices[i].api)) invalid("api ids not strictly ascending");
    auto& tags = vertices[i].tags;
    if (!std::is_sorted(tags.begin(), tags.end()) || std::adjacent_find(tags.begin(), tags.end()) != tags.end()) {
      invalid("tags of \"" + vertices[i].api + "\" are not a sorted set");
    }
    if (std::any_of(tags.begin(), tags.end(), [](const auto& t) { return t.empty(); })) invalid("empty tag");
  }
  for (const auto& e : edges) {
    if (e.u >= e.v) invalid("edge endpoints must satisfy u < v");
    if (e.v >= n) invalid("edge endpoint out of range");
    if (e.count == 0) invalid("edge count must be >= 1");
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i - 1].u == edges[i].u && edges[i - 1].v == edges[i].v) invalid("duplicate edge");
  }

  CorrelationGraph g;
  g.vertices_ = std::move(vertices);
  g.edges_ = std::move(edges);

  std::vector<std::uint32_t> degree(n, 0);
  for (const auto& e : g.edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
  g.adjacency_.resize(g.offsets_[n]);
  auto cursor = g.offsets_;
  for (const auto& e : g.edges_) {
    g.adjacency_[cursor[e.u]++] = {e.v, e.count};
    g.adjacency_[cursor[e.v]++] = {e.u, e.count};
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(g.adjacency_.begin() + g.offsets_[i], g.adjacency_.begin() + g.offsets_[i + 1],
              [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
  }

  DisjointSets sets(n);
  for (const auto& e : g.edges_) sets.unite(e.u, e.v);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (sets.find(i) != 0) invalid("graph is not connected");
  }

  for (VertexId v = 0; v < n; ++v) {
    for (const auto& tag : g.vertices_[v].tags) g.keyword_index_[tag].push_back(v);
  }
  return g;
}

std::span<const Neighbor> CorrelationGraph::neighbors(VertexId v) const {
  if (v >= vertices_.size()) throw InputError("vertex index out of range");
  return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
}

std::optional<std::uint32_t> CorrelationGraph::edge_count_between(VertexId u, VertexId v) const {
  const auto adj = neighbors(u);
  const auto it = std::lower_bound(adj.begin(), adj.end(), v, [](const Neighbor& nb, VertexId x) { return nb.to < x; });
  if (it == adj.end() || it->to != v) return std::nullopt;
  return it->count;
}

std::span<const VertexId> CorrelationGraph::keyword_vertices(std::string_view keyword) const {
  const auto it = keyword_index_.find(keyword);
  if (it == keyword_index_.end()) return {};
  return it->second;
}

bool CorrelationGraph::has_keyword(std::string_view keyword) const { return keyword_index_.find(keyword) != keyword_index_.end(); }

std::optional<VertexId> CorrelationGraph::find_api(std::string_view api) const {
  const auto it = std::lower_bound(vertices_.begin(), vertices_.end(), api,
                                   [](const Vertex& v, std::string_view id) { return v.api < id; });
  if (it == vertices_.end() || it->api != api) return std::nullopt;
  return static_cast<VertexId>(it - vertices_.begin());
}

CorrelationGraph build_wacg(const Ecosystem& eco, BuildStats* stats, std::optional<std::string_view> excluded_app) {
  // APIs in Ecosystem order are already sorted by id.
  std::vector<const std::pair<const ApiId, IdSet>*> apis;
  apis.reserve(eco.apis.size());
  for (const auto& entry : eco.apis) apis.push_back(&entry);
  auto index_of = [&](const ApiId& id) -> std::uint32_t {
    const auto it = std::lower_bound(apis.begin(), apis.end(), id, [](const auto* e, const ApiId& x) { return e->first < x; });
    if (it == apis.end() || (*it)->first != id) {
      throw IngestError(IngestError::Kind::DanglingApiRef, "unknown api \"" + id + "\"");
    }
    return static_cast<std::uint32_t>(it - apis.begin());
  };

  std::unordered_map<std::uint64_t, std::uint32_t> pair_counts;
  std::vector<std::uint32_t> members;
  for (const auto& [app, app_apis] : eco.apps) {
    if (excluded_app && app == *excluded_app) continue;
    members.clear();
    for (const auto& api : app_apis) members.push_back(index_of(api));
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        ++pair_counts[(std::uint64_t{members[i]} << 32) | members[j]];
      }
    }
  }
  if (pair_counts.empty()) throw GraphError(GraphError::Kind::NoEdges, "no app composes two or more apis");

  const auto n = apis.size();
  DisjointSets sets(n);
  std::vector<bool> has_edge(n, false);
  for (const auto& [key, count] : pair_counts) {
    const auto u = static_cast<std::uint32_t>(key >> 32);
    const auto v = static_cast<std::uint32_t>(key & 0xffffffffu);
    sets.unite(u, v);
    has_edge[u] = has_edge[v] = true;
  }
  // Representatives are the smallest member index, so scanning in index
  // order and keeping the first strictly-larger component applies the
  // smallest-ApiId tie-break.
  std::vector<std::uint32_t> size(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (has_edge[i]) ++size[sets.find(i)];
  }
  std::uint32_t best = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (size[i] > size[best]) best = i;
  }

  std::vector<std::int64_t> remap(n, -1);
  std::vector<Vertex> vertices;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (has_edge[i] && sets.find(i) == best) {
      remap[i] = static_cast<std::int64_t>(vertices.size());
      vertices.push_back({apis[i]->first, apis[i]->second});
    }
  }
  std::vector<Edge> edges;
  for (const auto& [key, count] : pair_counts) {
    const auto u = remap[key >> 32];
    const auto v = remap[key & 0xffffffffu];
    if (u < 0 || v < 0) continue;
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), count});
  }

  auto g = CorrelationGraph::from_parts(std::move(vertices), std::move(edges));
  if (stats != nullptr) {
    stats->apis_total = n;
    stats->apis_with_edges = static_cast<std::size_t>(std::count(has_edge.begin(), has_edge.end(), true));
    stats->vertices = g.vertex_count();
    stats->edges = g.edge_count();
    stats->component_coverage =
        static_cast<double>(stats->vertices) / static_cast<double>(std::max<std::size_t>(stats->apis_with_edges, 1));
  }
  return g;
}

std::string serialize(const CorrelationGraph& g) {
  nlohmann::ordered_json doc;
  doc["version"] = kGraphFormatVersion;
  auto& vertices = doc["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : g.vertices()) vertices.push_back({{"api", v.api}, {"tags", v.tags}});
  auto& edges = doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.count});
  return doc.dump();
}

CorrelationGraph deserialize(std::string_view payload) {
  using json = nlohmann::json;
  auto corrupt = [](const std::string& why) { return GraphError(GraphError::Kind::CorruptPayload, "corrupt graph payload: " + why); };

  json doc = json::parse(payload.begin(), payload.end(), nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) throw corrupt("not a JSON object");
  const auto version = doc.find("version");
  if (version == doc.end() || !version->is_number_integer()) throw corrupt("missing version");
  if (version->get<std::int64_t>() != kGraphFormatVersion) {
    throw GraphError(GraphError::Kind::VersionMismatch,
                     "graph format version " + std::to_string(version->get<std::int64_t>()) + " is not supported (expected " +
                         std::to_string(kGraphFormatVersion) + ")");
  }
  const auto jv = doc.find("vertices");
  const auto je = doc.find("edges");
  if (jv == doc.end() || !jv->is_array() || je == doc.end() || !je->is_array()) throw corrupt("missing vertices or edges");

  std::vector<Vertex> vertices;
  vertices.reserve(jv->size());
  for (const auto& v : *jv) {
    if (!v.is_object() || !v.contains("api") || !v["api"].is_string() || !v.contains("tags") || !v["tags"].is_array()) {
      throw corrupt("bad vertex record");
    }
    Vertex vertex{v["api"].get<std::string>(), {}};
    for (const auto& t : v["tags"]) {
      if (!t.is_string()) throw corrupt("bad tag");
      vertex.tags.push_back(t.get<std::string>());
    }
    vertices.push_back(std::move(vertex));
  }
  std::vector<Edge> edges;
  edges.reserve(je->size());
  for (const auto& e : *je) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned() || !e[2].is_number_unsigned()) {
      throw corrupt("bad edge record");
    }
    const auto u = e[0].get<std::uint64_t>();
    const auto v = e[1].get<std::uint64_t>();
    const auto c = e[2].get<std::uint64_t>();
    if (u > UINT32_MAX || v > UINT32_MAX || c > UINT32_MAX) throw corrupt("edge value out of range");
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), static_cast<std::uint32_t>(c)});
  }
  try {
    return CorrelationGraph::from_parts(std::move(vertices), std::move(edges));
  } catch (const GraphError& err) {
    throw corrupt(err.what());
  }
}

}  // namespace divcar

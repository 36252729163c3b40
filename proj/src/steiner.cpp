#include "divcar/steiner.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <unordered_map>

namespace divcar {
namespace {

// Compact copy of a subgraph in local indices. Local order equals parent
// order, so tie-breaks on local indices match tie-breaks on parent indices.
struct LocalGraph {
  std::vector<VertexId> to_parent;
  std::vector<std::uint32_t> offsets;
  std::vector<VertexId> adj_to;
  std::vector<Rational> adj_length;
  std::vector<KeywordMask> masks;

  LocalGraph(const Subgraph& g, const Query& q) : to_parent(g.vertices()) {
    const auto& parent = g.parent();
    const auto n = to_parent.size();
    std::vector<std::int32_t> to_local(parent.vertex_count(), -1);
    for (std::size_t i = 0; i < n; ++i) to_local[to_parent[i]] = static_cast<std::int32_t>(i);
    offsets.reserve(n + 1);
    offsets.push_back(0);
    masks.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& nb : parent.neighbors(to_parent[i])) {
        const auto local = to_local[nb.to];
        if (local < 0) continue;
        adj_to.push_back(static_cast<VertexId>(local));
        adj_length.push_back(nb.length());
      }
      offsets.push_back(static_cast<std::uint32_t>(adj_to.size()));
      masks.push_back(q.mask_of(parent.vertex(to_parent[i]).tags));
    }
  }

  [[nodiscard]] std::size_t size() const { return to_parent.size(); }
};

enum class Origin : std::uint8_t { Leaf, Grown, Merged };

struct State {
  Rational weight;
  VertexId root;
  KeywordMask mask;
  Origin origin;
  std::int32_t first = -1;   // Grown: source state; Merged: one side
  std::int32_t second = -1;  // Merged: other side
};

struct QueueEntry {
  Rational weight;
  int popcount;
  VertexId root;
  KeywordMask mask;
  std::int32_t state;
};

// Priority-queue comparator: true when `a` should leave the queue after `b`.
struct LaterThan {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (const auto c = a.weight <=> b.weight; c != 0) return c > 0;
    if (a.popcount != b.popcount) return a.popcount > b.popcount;
    if (a.root != b.root) return a.root > b.root;
    if (a.mask != b.mask) return a.mask > b.mask;
    return a.state > b.state;
  }
};

// Best state per (root, mask). Dense when small enough, hashed otherwise.
class BestIndex {
 public:
  BestIndex(std::size_t n, std::size_t width) : width_(width) {
    constexpr std::size_t kDenseLimit = std::size_t{1} << 24;
    if (width < 32 && (n << width) <= kDenseLimit) dense_.assign(n << width, -1);
  }

  std::int32_t get(VertexId v, KeywordMask m) const {
    if (!dense_.empty()) return dense_[(std::size_t{v} << width_) | m];
    const auto it = sparse_.find(key(v, m));
    return it == sparse_.end() ? -1 : it->second;
  }
  void set(VertexId v, KeywordMask m, std::int32_t s) {
    if (!dense_.empty()) {
      dense_[(std::size_t{v} << width_) | m] = s;
    } else {
      sparse_[key(v, m)] = s;
    }
  }

 private:
  static std::uint64_t key(VertexId v, KeywordMask m) { return (std::uint64_t{v} << 32) | m; }

  std::size_t width_;
  std::vector<std::int32_t> dense_;
  std::unordered_map<std::uint64_t, std::int32_t> sparse_;
};

SteinerTree reconstruct(const LocalGraph& lg, const std::vector<State>& states, std::int32_t final_state) {
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  std::vector<std::int32_t> stack{final_state};
  std::size_t steps = 0;
  while (!stack.empty()) {
    const auto idx = stack.back();
    stack.pop_back();
    if (++steps > states.size()) throw InternalError("provenance cycle during tree reconstruction");
    const auto& s = states[static_cast<std::size_t>(idx)];
    vertices.push_back(s.root);
    switch (s.origin) {
      case Origin::Leaf:
        break;
      case Origin::Grown: {
        if (s.first >= idx) throw InternalError("provenance cycle during tree reconstruction");
        const auto child = states[static_cast<std::size_t>(s.first)].root;
        edges.push_back({std::min(s.root, child), std::max(s.root, child), 0});
        stack.push_back(s.first);
        break;
      }
      case Origin::Merged:
        if (s.first >= idx || s.second >= idx) throw InternalError("provenance cycle during tree reconstruction");
        stack.push_back(s.first);
        stack.push_back(s.second);
        break;
    }
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.u == b.u && a.v == b.v;
      }) != edges.end()) {
    throw InternalError("merged subtrees share an edge");
  }
  if (edges.size() + 1 != vertices.size()) throw InternalError("reconstructed structure is not a tree");

  const auto& final = states[static_cast<std::size_t>(final_state)];
  SteinerTree tree;
  tree.root = lg.to_parent[final.root];
  tree.covered = final.mask;
  for (const auto v : vertices) tree.vertices.push_back(lg.to_parent[v]);
  Rational total;
  for (const auto& e : edges) {
    const auto begin = lg.adj_to.begin() + lg.offsets[e.u];
    const auto end = lg.adj_to.begin() + lg.offsets[e.u + 1];
    const auto pos = static_cast<std::size_t>(std::find(begin, end, e.v) - lg.adj_to.begin());
    total += lg.adj_length[pos];
    const auto count = static_cast<std::uint32_t>(lg.adj_length[pos].den());
    // Local order equals parent order, so u < v still holds.
    tree.edges.push_back({lg.to_parent[e.u], lg.to_parent[e.v], count});
  }
  if (total != final.weight) throw InternalError("tree length disagrees with its search weight");
  tree.total_length = total;
  return tree;
}

}  // namespace

KeywordUncoveredInGraph::KeywordUncoveredInGraph(std::vector<Keyword> missing)
    : InputError([&] {
        std::string msg = "query keywords not covered by the graph:";
        for (const auto& k : missing) msg += " " + k;
        return msg;
      }()),
      missing_(std::move(missing)) {}

std::vector<Keyword> uncovered_keywords(const Subgraph& g, const Query& q) {
  KeywordMask covered = 0;
  for (const auto v : g.vertices()) covered |= q.mask_of(g.parent().vertex(v).tags);
  return q.keywords_in(q.full_mask() & ~covered);
}

std::optional<SteinerTree> search_min_gst(const Subgraph& g, const Query& q, const SettleObserver& observer) {
  const LocalGraph lg(g, q);
  const auto n = lg.size();
  const auto full = q.full_mask();

  KeywordMask covered = 0;
  for (const auto m : lg.masks) covered |= m;
  if (covered != full) return std::nullopt;

  std::vector<State> states;
  BestIndex best(n, q.size());
  std::vector<std::vector<std::pair<KeywordMask, std::int32_t>>> settled_at(n);
  std::vector<char> settled_flag;  // per state
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, LaterThan> queue;

  auto relax = [&](VertexId root, KeywordMask mask, Rational weight, Origin origin, std::int32_t first,
                   std::int32_t second) {
    const auto current = best.get(root, mask);
    if (current >= 0) {
      const auto& cur = states[static_cast<std::size_t>(current)];
      if (settled_flag[static_cast<std::size_t>(current)] || !(weight < cur.weight)) return;
    }
    const auto idx = static_cast<std::int32_t>(states.size());
    states.push_back({weight, root, mask, origin, first, second});
    settled_flag.push_back(0);
    best.set(root, mask, idx);
    queue.push({std::move(weight), popcount(mask), root, mask, idx});
  };

  // Every nonempty part of a vertex's keywords is a leaf, so vertices with
  // overlapping tags can still merge on disjoint masks.
  for (VertexId v = 0; v < n; ++v) {
    for (auto sub = lg.masks[v]; sub != 0; sub = (sub - 1) & lg.masks[v]) {
      relax(v, sub, Rational::zero(), Origin::Leaf, -1, -1);
    }
  }

  while (!queue.empty()) {
    const auto entry = queue.top();
    queue.pop();
    if (best.get(entry.root, entry.mask) != entry.state) continue;  // superseded
    const auto idx = entry.state;
    settled_flag[static_cast<std::size_t>(idx)] = 1;
    if (observer) observer(lg.to_parent[entry.root], entry.mask, entry.weight);
    if (entry.mask == full) return reconstruct(lg, states, idx);

    auto settled = [&](VertexId root, KeywordMask mask) {
      const auto s = best.get(root, mask);
      return s >= 0 && settled_flag[static_cast<std::size_t>(s)];
    };
    for (auto i = lg.offsets[entry.root]; i < lg.offsets[entry.root + 1]; ++i) {
      if (settled(lg.adj_to[i], entry.mask)) continue;
      relax(lg.adj_to[i], entry.mask, entry.weight + lg.adj_length[i], Origin::Grown, idx, -1);
    }
    const auto& partners = settled_at[entry.root];
    for (std::size_t j = 0; j < partners.size(); ++j) {
      const auto [other_mask, other] = partners[j];
      if ((other_mask & entry.mask) != 0 || settled(entry.root, other_mask | entry.mask)) continue;
      relax(entry.root, other_mask | entry.mask, entry.weight + states[static_cast<std::size_t>(other)].weight,
            Origin::Merged, idx, other);
    }
    settled_at[entry.root].emplace_back(entry.mask, idx);
  }
  return std::nullopt;
}

std::optional<SteinerTree> search_min_gst(const CorrelationGraph& g, const Query& q) {
  return search_min_gst(Subgraph::whole(g), q);
}

std::optional<SteinerTree> search_min_gst_checked(const Subgraph& g, const Query& q) {
  if (auto missing = uncovered_keywords(g, q); !missing.empty()) throw KeywordUncoveredInGraph(std::move(missing));
  return search_min_gst(g, q);
}

double Compatibility::to_double() const {
  return is_max_ ? std::numeric_limits<double>::infinity() : value_.to_double();
}

std::vector<std::string> check_tree(const Subgraph& g, const Query& q, const SteinerTree& t) {
  std::vector<std::string> problems;
  const auto& parent = g.parent();
  if (t.vertices.empty()) {
    problems.emplace_back("tree has no vertices");
    return problems;
  }
  if (!std::is_sorted(t.vertices.begin(), t.vertices.end()) ||
      std::adjacent_find(t.vertices.begin(), t.vertices.end()) != t.vertices.end()) {
    problems.emplace_back("vertex list is not a sorted set");
  }
  for (const auto v : t.vertices) {
    if (!g.contains(v)) problems.push_back("vertex " + std::to_string(v) + " is outside the searched graph");
  }
  if (!std::binary_search(t.vertices.begin(), t.vertices.end(), t.root)) problems.emplace_back("root is not a tree vertex");

  Rational sum;
  std::vector<std::vector<VertexId>> adj(t.vertices.size());
  auto local = [&](VertexId v) -> std::optional<std::size_t> {
    const auto it = std::lower_bound(t.vertices.begin(), t.vertices.end(), v);
    if (it == t.vertices.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - t.vertices.begin());
  };
  for (const auto& e : t.edges) {
    const auto count = e.u < parent.vertex_count() && e.v < parent.vertex_count() ? parent.edge_count_between(e.u, e.v)
                                                                                  : std::nullopt;
    if (!count || *count != e.count) {
      problems.push_back("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") does not match the graph");
      continue;
    }
    sum += e.length();
    const auto a = local(e.u);
    const auto b = local(e.v);
    if (!a || !b) {
      problems.emplace_back("edge endpoint is not a tree vertex");
      continue;
    }
    adj[*a].push_back(static_cast<VertexId>(*b));
    adj[*b].push_back(static_cast<VertexId>(*a));
  }
  if (t.edges.size() + 1 != t.vertices.size()) problems.emplace_back("edge count is not |V| - 1");

  std::vector<char> seen(t.vertices.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto x = stack.back();
    stack.pop_back();
    for (const auto y : adj[x]) {
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  if (reached != t.vertices.size()) problems.emplace_back("tree is not connected");

  KeywordMask covered = 0;
  std::vector<KeywordMask> masks;
  for (const auto v : t.vertices) {
    masks.push_back(v < parent.vertex_count() ? q.mask_of(parent.vertex(v).tags) : 0);
    covered |= masks.back();
  }
  if (covered != q.full_mask()) problems.emplace_back("tree does not cover every query keyword");
  if (t.covered != q.full_mask()) problems.emplace_back("tree's covered mask is not the full query");
  if (sum != t.total_length) problems.emplace_back("total length differs from the sum of edge lengths");

  for (std::size_t i = 0; i < t.vertices.size(); ++i) {
    if (t.vertices.size() > 1 && adj[i].size() != 1) continue;
    KeywordMask others = 0;
    for (std::size_t j = 0; j < masks.size(); ++j) {
      if (j != i) others |= masks[j];
    }
    if ((masks[i] & ~others) == 0) {
      problems.push_back("leaf " + std::to_string(t.vertices[i]) + " carries no keyword of its own");
    }
  }
  return problems;
}

}  // namespace divcar

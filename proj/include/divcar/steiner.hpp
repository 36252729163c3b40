#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "divcar/graph.hpp"
#include "divcar/query.hpp"
#include "divcar/rational.hpp"
#include "divcar/sampler.hpp"

namespace divcar {

/// A tree connecting, for every query keyword, at least one vertex that
/// carries it. Vertex and edge ids refer to the parent CorrelationGraph.
struct SteinerTree {
  VertexId root = 0;
  std::vector<VertexId> vertices;  ///< ascending
  std::vector<Edge> edges;         ///< u < v, ascending
  Rational total_length;
  KeywordMask covered = 0;

  friend bool operator==(const SteinerTree&, const SteinerTree&) = default;
};

class KeywordUncoveredInGraph : public InputError {
 public:
  explicit KeywordUncoveredInGraph(std::vector<Keyword> missing);
  [[nodiscard]] const std::vector<Keyword>& missing() const { return missing_; }

 private:
  std::vector<Keyword> missing_;
};

/// Query keywords carried by no vertex of `g`.
std::vector<Keyword> uncovered_keywords(const Subgraph& g, const Query& q);

/// Called once per settled (non-stale) state, in dequeue order.
using SettleObserver = std::function<void(VertexId root, KeywordMask mask, const Rational& weight)>;

/// Exact minimum group Steiner tree by best-first dynamic programming over
/// (root, keyword subset) states.
///
/// Every vertex carrying query keywords seeds a zero-weight state. States
/// leave a min-priority queue in (weight, popcount, root, mask) order; each
/// settled state is grown across every incident edge and merged with every
/// settled state at the same root whose keyword subset is disjoint. The
/// first full-mask state to leave the queue is optimal.
///
/// Returns nullopt when no tree exists: some keyword is uncovered, or the
/// covering vertices lie in different components of a sampled subgraph.
std::optional<SteinerTree> search_min_gst(const Subgraph& g, const Query& q, const SettleObserver& observer = {});
std::optional<SteinerTree> search_min_gst(const CorrelationGraph& g, const Query& q);

/// Like search_min_gst, but throws KeywordUncoveredInGraph listing the
/// missing keywords instead of returning nullopt for them.
std::optional<SteinerTree> search_min_gst_checked(const Subgraph& g, const Query& q);

/// Reciprocal of a tree's total length. A single-vertex tree has length 0
/// and gets the distinguished score max(), which outranks every finite one.
class Compatibility {
 public:
  static Compatibility max() {
    Compatibility c;
    c.is_max_ = true;
    return c;
  }
  static Compatibility of_length(const Rational& total_length) {
    if (total_length.is_zero()) return max();
    Compatibility c;
    c.value_ = total_length.reciprocal();
    return c;
  }

  [[nodiscard]] bool is_max() const { return is_max_; }
  /// Finite score; meaningless when is_max().
  [[nodiscard]] const Rational& value() const { return value_; }
  [[nodiscard]] double to_double() const;

  friend bool operator==(const Compatibility&, const Compatibility&) = default;
  friend std::strong_ordering operator<=>(const Compatibility& a, const Compatibility& b) {
    if (a.is_max_ || b.is_max_) return a.is_max_ <=> b.is_max_;
    return a.value_ <=> b.value_;
  }

 private:
  bool is_max_ = false;
  Rational value_;
};

inline Compatibility tree_compatibility(const SteinerTree& t) { return Compatibility::of_length(t.total_length); }

/// Structural check of a tree against the graph it was found in: edges
/// exist with their counts, the edge set is a spanning tree of the vertex
/// set, the keywords are covered, the length adds up and every leaf carries
/// a keyword no other tree vertex does. Returns one message per violation.
std::vector<std::string> check_tree(const Subgraph& g, const Query& q, const SteinerTree& t);

}  // namespace divcar

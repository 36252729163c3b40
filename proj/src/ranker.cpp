#include "divcar/ranker.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

namespace divcar {
namespace {

std::size_t intersection_size(std::span<const std::string> a, std::span<const std::string> b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

bool compatibility_order(const RecommendationList& a, const RecommendationList& b) {
  if (const auto c = a.compatibility <=> b.compatibility; c != 0) return c > 0;
  if (a.apis.size() != b.apis.size()) return a.apis.size() < b.apis.size();
  if (a.apis != b.apis) return a.apis < b.apis;
  return a.source_subgraph < b.source_subgraph;
}

}  // namespace

Rational diversity(std::span<const std::string> a, std::span<const std::string> b) {
  const auto total = a.size() + b.size();
  if (total == 0) throw InputError("diversity of two empty lists is undefined");
  return {total - intersection_size(a, b), total};
}

bool meets_threshold(const Rational& d, double theta) { return d.to_double() >= theta; }

std::vector<RecommendationList> collect_lists(const CorrelationGraph& g, std::span<const std::optional<SteinerTree>> trees) {
  std::map<IdSet, RecommendationList> by_apis;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    if (!trees[i]) continue;
    const auto& t = *trees[i];
    RecommendationList list;
    for (const auto v : t.vertices) list.apis.push_back(g.vertex(v).api);
    std::sort(list.apis.begin(), list.apis.end());
    list.total_length = t.total_length;
    list.compatibility = tree_compatibility(t);
    list.source_subgraph = i;
    auto [it, inserted] = by_apis.try_emplace(list.apis, list);
    if (!inserted && list.total_length < it->second.total_length) it->second = std::move(list);
  }
  std::vector<RecommendationList> out;
  out.reserve(by_apis.size());
  for (auto& [apis, list] : by_apis) out.push_back(std::move(list));
  sort_by_compatibility(out);
  return out;
}

void sort_by_compatibility(std::vector<RecommendationList>& lists) {
  std::sort(lists.begin(), lists.end(), compatibility_order);
}

void sort_by_accuracy(std::vector<RecommendationList>& lists, std::span<const std::string> truth) {
  if (truth.empty()) throw InputError("accuracy ranking needs a nonempty ground truth");
  // Precision hits/|list| compared exactly by cross multiplication.
  std::vector<std::pair<std::size_t, const RecommendationList*>> keyed;
  keyed.reserve(lists.size());
  for (const auto& l : lists) keyed.emplace_back(intersection_size(l.apis, truth), &l);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    const auto lhs = a.first * b.second->apis.size();
    const auto rhs = b.first * a.second->apis.size();
    if (lhs != rhs) return lhs > rhs;
    return compatibility_order(*a.second, *b.second);
  });
  std::vector<RecommendationList> sorted;
  sorted.reserve(lists.size());
  for (const auto& [hits, l] : keyed) sorted.push_back(*l);
  lists = std::move(sorted);
}

std::vector<RecommendationList> rank_by_accuracy(std::vector<RecommendationList> lists, std::span<const std::string> truth) {
  sort_by_accuracy(lists, truth);
  return lists;
}

RankedResult diversify(std::span<const RecommendationList> ranked, std::size_t k, double theta) {
  if (k == 0) throw InputError("k must be >= 1");
  if (!(theta >= 0.0 && theta <= 1.0)) throw InputError("theta must lie in [0, 1]");
  RankedResult result;
  result.k = k;
  result.theta = theta;
  for (const auto& candidate : ranked) {
    if (result.lists.size() >= k) break;
    const bool diverse = std::all_of(result.lists.begin(), result.lists.end(), [&](const RecommendationList& chosen) {
      return meets_threshold(diversity(candidate, chosen), theta);
    });
    if (diverse) result.lists.push_back(candidate);
  }
  return result;
}

RankedResult rank_and_diversify(const CorrelationGraph& g, std::span<const std::optional<SteinerTree>> trees,
                                std::size_t k, double theta) {
  const auto lists = collect_lists(g, trees);
  return diversify(lists, k, theta);
}

std::string result_json(const Query& q, const RankedResult& result) {
  nlohmann::ordered_json doc;
  doc["query"] = q.keywords();
  doc["k"] = result.k;
  doc["theta"] = result.theta;
  doc["found"] = result.lists.size();
  auto& lists = doc["lists"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < result.lists.size(); ++i) {
    const auto& l = result.lists[i];
    nlohmann::ordered_json entry;
    entry["apis"] = l.apis;
    if (l.compatibility.is_max()) {
      entry["compatibility"] = "max";
    } else {
      entry["compatibility"] = l.compatibility.to_double();
    }
    entry["total_length"] = l.total_length.to_double();
    auto& prev = entry["diversity_to_prev"] = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < i; ++j) prev.push_back(diversity(l, result.lists[j]).to_double());
    lists.push_back(std::move(entry));
  }
  return doc.dump(2);
}

}  // namespace divcar

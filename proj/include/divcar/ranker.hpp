#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "divcar/graph.hpp"
#include "divcar/query.hpp"
#include "divcar/rational.hpp"
#include "divcar/steiner.hpp"

namespace divcar {

inline constexpr std::size_t kDefaultK = 10;
inline constexpr double kDefaultTheta = 0.5;

/// One recommended API composition: the vertex set of a Steiner tree found
/// in sampled subgraph `source_subgraph`.
struct RecommendationList {
  IdSet apis;  ///< sorted ApiIds
  Rational total_length;
  Compatibility compatibility;
  std::size_t source_subgraph = 0;

  friend bool operator==(const RecommendationList&, const RecommendationList&) = default;
};

struct RankedResult {
  std::vector<RecommendationList> lists;
  double theta = kDefaultTheta;
  std::size_t k = kDefaultK;
};

/// 1 - |a ∩ b| / (|a| + |b|) over sorted id sets, exact.
Rational diversity(std::span<const std::string> a, std::span<const std::string> b);
inline Rational diversity(const RecommendationList& a, const RecommendationList& b) { return diversity(a.apis, b.apis); }

/// True when `d` >= `theta`. The rational is rounded once to double, so a
/// theta written as the same decimal compares equal.
bool meets_threshold(const Rational& d, double theta);

/// Drops absent trees, converts the rest to lists (tree index becomes
/// source_subgraph) and keeps the lightest list per distinct API set
/// (earliest subgraph on equal length). Output is in query-time rank order.
std::vector<RecommendationList> collect_lists(const CorrelationGraph& g, std::span<const std::optional<SteinerTree>> trees);

/// Query-time order: compatibility descending (max first), then fewer APIs,
/// then lexicographic API sequence.
void sort_by_compatibility(std::vector<RecommendationList>& lists);

/// Evaluation order: precision against `truth` descending, then the
/// query-time order.
void sort_by_accuracy(std::vector<RecommendationList>& lists, std::span<const std::string> truth);
std::vector<RecommendationList> rank_by_accuracy(std::vector<RecommendationList> lists, std::span<const std::string> truth);

/// Greedy filter over an already ranked sequence: accept a list when its
/// diversity to every accepted list is >= theta; stop at k.
RankedResult diversify(std::span<const RecommendationList> ranked, std::size_t k, double theta);

/// collect_lists + sort_by_compatibility + diversify.
RankedResult rank_and_diversify(const CorrelationGraph& g, std::span<const std::optional<SteinerTree>> trees,
                                std::size_t k = kDefaultK, double theta = kDefaultTheta);

/// {"query":[...],"k":..,"theta":..,"found":..,"lists":[{"apis":[...],
/// "compatibility":float|"max","total_length":float,"diversity_to_prev":[...]}]}
std::string result_json(const Query& q, const RankedResult& result);

}  // namespace divcar

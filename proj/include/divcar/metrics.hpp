#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "divcar/ranker.hpp"

namespace divcar {

// Evaluation metrics over a set of recommendation lists. Lists are sorted
// ApiId sets; `truth` is the held-out app's API set.

/// Inter-list Hamming diversity: 1 - |a ∩ b| / (|a| + |b|).
double hmd(std::span<const std::string> a, std::span<const std::string> b);

/// Mean hmd over all ordered pairs i != j. nullopt for fewer than two lists.
std::optional<double> mild(std::span<const RecommendationList> lists);

struct MilcSummary {
  /// Mean of the finite compatibility scores; nullopt when none are finite.
  std::optional<double> mean;
  /// Lists with the unbounded score of a single-API tree, left out of the mean.
  std::size_t max_scored = 0;
};
MilcSummary milc(std::span<const RecommendationList> lists);

/// Mean precision |RL ∩ truth| / |RL|; 0 for no lists.
double mp(std::span<const RecommendationList> lists, std::span<const std::string> truth);
/// Mean recall |RL ∩ truth| / |truth|; 0 for no lists.
double mr(std::span<const RecommendationList> lists, std::span<const std::string> truth);

/// 5·mp·mild / (4·mp + mild), the F2-style blend of accuracy and diversity.
/// Defined as 0 when both inputs are 0.
double harmonic(double mp, double mild);

struct MetricsReport {
  std::optional<double> mild;
  std::optional<double> milc;
  std::size_t milc_max_scored = 0;
  double mp = 0.0;
  double mr = 0.0;
  std::optional<double> harmonic;
  std::size_t k_effective = 0;
  double wall_time_seconds = 0.0;
};

/// All metrics for one set of lists; wall time is left for the caller.
MetricsReport score_lists(std::span<const RecommendationList> lists, std::span<const std::string> truth);

}  // namespace divcar

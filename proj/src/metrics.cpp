#include "divcar/metrics.hpp"

#include <algorithm>

namespace divcar {
namespace {

double hits(std::span<const std::string> list, std::span<const std::string> truth) {
  std::size_t n = 0;
  for (const auto& api : list) n += std::binary_search(truth.begin(), truth.end(), api) ? 1 : 0;
  return static_cast<double>(n);
}

}  // namespace

double hmd(std::span<const std::string> a, std::span<const std::string> b) { return diversity(a, b).to_double(); }

std::optional<double> mild(std::span<const RecommendationList> lists) {
  const auto k = lists.size();
  if (k < 2) return std::nullopt;
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) sum += 2.0 * hmd(lists[i].apis, lists[j].apis);
  }
  return sum / static_cast<double>(k * (k - 1));
}

MilcSummary milc(std::span<const RecommendationList> lists) {
  MilcSummary out;
  double sum = 0.0;
  std::size_t finite = 0;
  for (const auto& l : lists) {
    if (l.compatibility.is_max()) {
      ++out.max_scored;
    } else {
      sum += l.compatibility.to_double();
      ++finite;
    }
  }
  if (finite > 0) out.mean = sum / static_cast<double>(finite);
  return out;
}

double mp(std::span<const RecommendationList> lists, std::span<const std::string> truth) {
  if (lists.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& l : lists) sum += hits(l.apis, truth) / static_cast<double>(l.apis.size());
  return sum / static_cast<double>(lists.size());
}

double mr(std::span<const RecommendationList> lists, std::span<const std::string> truth) {
  if (lists.empty() || truth.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& l : lists) sum += hits(l.apis, truth) / static_cast<double>(truth.size());
  return sum / static_cast<double>(lists.size());
}

double harmonic(double mp_value, double mild_value) {
  const double den = 4.0 * mp_value + mild_value;
  if (den == 0.0) return 0.0;
  return 5.0 * mp_value * mild_value / den;
}

MetricsReport score_lists(std::span<const RecommendationList> lists, std::span<const std::string> truth) {
  MetricsReport r;
  r.k_effective = lists.size();
  r.mild = mild(lists);
  const auto c = milc(lists);
  r.milc = c.mean;
  r.milc_max_scored = c.max_scored;
  r.mp = mp(lists, truth);
  r.mr = mr(lists, truth);
  if (r.mild) r.harmonic = harmonic(r.mp, *r.mild);
  return r;
}

}  // namespace divcar

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "divcar/ingest.hpp"
#include "divcar/metrics.hpp"
#include "divcar/ranker.hpp"
#include "divcar/sampler.hpp"

namespace divcar {

class EvalError : public InputError {
 public:
  enum class Kind { InfeasibleSpec, UnknownApp, ExcludedApp, KeywordLost };

  EvalError(Kind kind, std::string message) : InputError(std::move(message)), kind_(kind) {}
  [[nodiscard]] Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Planted-community synthetic corpus. Keywords are split round-robin into
/// communities; each API gets a home community and 1..3 tags drawn mostly
/// from it; each app picks a home community and composes APIs drawn mostly
/// from it, favouring a few popular APIs per community.
struct SyntheticSpec {
  std::size_t n_apis = 500;
  std::size_t n_apps = 2000;
  std::size_t n_keywords = 60;
  std::size_t community_count = 6;
  std::size_t apis_per_app_min = 3;
  std::size_t apis_per_app_max = 5;
  std::uint64_t seed = 7;
  /// Probability that a tag or an app member is drawn from the home community.
  double in_community = 0.85;
  /// Zipf exponent of API popularity inside a community.
  double popularity_skew = 1.0;
};

/// Throws EvalError(InfeasibleSpec) for zero counts, apis_per_app_min < 2,
/// an inverted range, or apis_per_app_max > n_apis.
Ecosystem generate_corpus(const SyntheticSpec& spec);

/// Which lists the metrics are computed over.
enum class ListScope {
  /// The top-K output after accuracy ranking and the theta filter.
  RankedTopK,
  /// One list per sampled subgraph that produced a tree, no dedupe or filter.
  AllSubgraphs,
};

struct EvalConfig {
  std::size_t k = kDefaultK;
  double theta = kDefaultTheta;
  std::size_t z = 100;
  std::size_t p = 100;
  std::uint64_t seed = kDefaultSeed;
  std::size_t max_stall_steps = 100;
  ListScope scope = ListScope::RankedTopK;
};

/// Holds out `app`: its co-usage pairs are removed before the graph is
/// built, its tag union becomes the query and its API set the truth.
/// Throws EvalError for unknown apps, apps with fewer than three keywords,
/// and queries whose keywords vanish from the held-out graph.
MetricsReport leave_one_out_eval(const Ecosystem& eco, std::string_view app, const EvalConfig& cfg);

/// Evaluation on an already built graph; the core of leave_one_out_eval.
MetricsReport evaluate_query(const CorrelationGraph& g, const Query& q, const IdSet& truth, const EvalConfig& cfg);

struct SweepSpec {
  std::vector<std::size_t> z_values{10, 100};
  std::vector<std::size_t> p_values{100};
  std::vector<std::size_t> r_values{3, 4, 5, 6};
  std::size_t repetitions = 1;
  /// Held-out apps drawn per (r, repetition).
  std::size_t apps_per_cell = 100;
  std::uint64_t seed = kDefaultSeed;
  std::size_t k = kDefaultK;
  double theta = kDefaultTheta;
  ListScope scope = ListScope::RankedTopK;
  std::size_t jobs = 1;
};

/// Means over the evaluated instances of one (z, p, r) cell.
struct SweepCell {
  std::size_t z = 0;
  std::size_t p = 0;
  std::size_t r = 0;
  std::size_t k = 0;
  double theta = 0.0;
  std::uint64_t seed = 0;
  double mp = 0.0;
  double mr = 0.0;
  std::optional<double> mild;
  std::optional<double> milc;
  std::optional<double> harmonic;
  double mean_wall_s = 0.0;
  std::size_t n_instances = 0;
  std::size_t n_skipped = 0;
};

/// Validates a sweep spec (nonempty lists, r >= 3, positive counts).
void validate(const SweepSpec& spec);

/// Runs every (z, p, r) cell. The same held-out apps and sampling seeds are
/// reused across z and p, so the first z samples of a larger-z cell are
/// exactly the samples of a smaller-z cell. Deterministic for any `jobs`
/// apart from the wall-time column.
std::vector<SweepCell> run_sweep(const Ecosystem& eco, const SweepSpec& spec);

inline constexpr std::string_view kSweepCsvHeader =
    "z,p,r,K,theta,seed,mp,mr,mild,milc,harmonic,mean_wall_s,n_instances,n_skipped";

/// CSV table with kSweepCsvHeader. Absent values print as NA; with
/// `with_timing` false the wall-time column is NA too, so the bytes depend
/// only on the inputs.
std::string sweep_csv(const std::vector<SweepCell>& cells, bool with_timing = true);

}  // namespace divcar

#include "divcar/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>

#include "divcar/graph.hpp"
#include "divcar/parallel.hpp"
#include "divcar/pipeline.hpp"

namespace divcar {
namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  // splitmix64 finalizer over a combined word.
  std::uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string padded(const char* prefix, std::size_t i, std::size_t total) {
  const int width = std::max(1, static_cast<int>(std::to_string(total > 0 ? total - 1 : 0).size()));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, i);
  return buf;
}

std::vector<RecommendationList> per_subgraph_lists(const CorrelationGraph& g,
                                                   const std::vector<std::optional<SteinerTree>>& trees) {
  std::vector<RecommendationList> out;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    if (!trees[i]) continue;
    RecommendationList l;
    for (const auto v : trees[i]->vertices) l.apis.push_back(g.vertex(v).api);
    std::sort(l.apis.begin(), l.apis.end());
    l.total_length = trees[i]->total_length;
    l.compatibility = tree_compatibility(*trees[i]);
    l.source_subgraph = i;
    out.push_back(std::move(l));
  }
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string("NA"); }

}  // namespace

Ecosystem generate_corpus(const SyntheticSpec& spec) {
  auto infeasible = [](const std::string& why) { return EvalError(EvalError::Kind::InfeasibleSpec, "infeasible corpus spec: " + why); };
  if (spec.n_apis == 0 || spec.n_apps == 0 || spec.n_keywords == 0 || spec.community_count == 0) {
    throw infeasible("all counts must be >= 1");
  }
  if (spec.apis_per_app_min < 2) throw infeasible("apps must compose at least 2 apis");
  if (spec.apis_per_app_max < spec.apis_per_app_min) throw infeasible("apis_per_app range is inverted");
  if (spec.apis_per_app_max > spec.n_apis) throw infeasible("apis_per_app exceeds n_apis");
  if (spec.community_count > spec.n_keywords) throw infeasible("more communities than keywords");
  if (!(spec.in_community >= 0.0 && spec.in_community <= 1.0)) throw infeasible("in_community must lie in [0, 1]");

  std::mt19937_64 rng(spec.seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  std::bernoulli_distribution stay_home(spec.in_community);

  std::vector<std::string> keywords;
  std::vector<std::vector<std::size_t>> community_keywords(spec.community_count);
  for (std::size_t i = 0; i < spec.n_keywords; ++i) {
    keywords.push_back(padded("kw", i, spec.n_keywords));
    community_keywords[i % spec.community_count].push_back(i);
  }

  Ecosystem eco;
  std::vector<std::string> api_ids;
  std::vector<std::vector<std::size_t>> community_apis(spec.community_count);
  for (std::size_t i = 0; i < spec.n_apis; ++i) {
    const auto home = pick(spec.community_count);
    const auto n_tags = 1 + pick(3);
    std::vector<std::string> tags;
    for (std::size_t t = 0; t < n_tags; ++t) {
      const auto& pool = community_keywords[home];
      tags.push_back(stay_home(rng) ? keywords[pool[pick(pool.size())]] : keywords[pick(keywords.size())]);
    }
    api_ids.push_back(padded("api", i, spec.n_apis));
    community_apis[home].push_back(i);
    eco.apis.emplace(api_ids.back(), make_id_set(std::move(tags)));
  }

  // Zipf popularity inside each community, over a random rank order.
  std::vector<std::discrete_distribution<std::size_t>> popularity;
  for (auto& members : community_apis) {
    std::shuffle(members.begin(), members.end(), rng);
    std::vector<double> weights;
    for (std::size_t rank = 0; rank < members.size(); ++rank) {
      weights.push_back(1.0 / std::pow(static_cast<double>(rank + 1), spec.popularity_skew));
    }
    popularity.emplace_back(weights.begin(), weights.end());
  }

  for (std::size_t a = 0; a < spec.n_apps; ++a) {
    const auto home = pick(spec.community_count);
    const auto size = spec.apis_per_app_min + pick(spec.apis_per_app_max - spec.apis_per_app_min + 1);
    std::set<std::size_t> members;
    for (std::size_t attempt = 0; members.size() < size && attempt < 64 * size; ++attempt) {
      if (!community_apis[home].empty() && stay_home(rng)) {
        members.insert(community_apis[home][popularity[home](rng)]);
      } else {
        members.insert(pick(spec.n_apis));
      }
    }
    // Fill deterministically if the draws kept colliding.
    for (std::size_t i = 0; members.size() < size; ++i) members.insert(i);
    std::vector<std::string> apis;
    for (const auto m : members) apis.push_back(api_ids[m]);
    eco.apps.emplace(padded("app", a, spec.n_apps), make_id_set(std::move(apis)));
  }
  validate(eco);
  return eco;
}

MetricsReport evaluate_query(const CorrelationGraph& g, const Query& q, const IdSet& truth, const EvalConfig& cfg) {
  for (const auto& k : q.keywords()) {
    if (!g.has_keyword(k)) {
      throw EvalError(EvalError::Kind::KeywordLost, "keyword \"" + k + "\" has no vertex in the held-out graph");
    }
  }
  const auto start = std::chrono::steady_clock::now();
  SampleConfig sampling{cfg.z, cfg.p, cfg.seed, cfg.max_stall_steps};
  const auto samples = sample_subgraphs(g, q, sampling);
  const auto trees = search_all(samples, q);
  std::vector<RecommendationList> lists;
  if (cfg.scope == ListScope::AllSubgraphs) {
    lists = per_subgraph_lists(g, trees);
  } else {
    auto pool = collect_lists(g, trees);
    sort_by_accuracy(pool, truth);
    lists = diversify(pool, cfg.k, cfg.theta).lists;
  }
  const auto stop = std::chrono::steady_clock::now();
  auto report = score_lists(lists, truth);
  report.wall_time_seconds = std::chrono::duration<double>(stop - start).count();
  return report;
}

namespace {

struct HeldOut {
  Query query;
  IdSet truth;
};

HeldOut hold_out(const Ecosystem& eco, std::string_view app) {
  const auto it = eco.apps.find(std::string(app));
  if (it == eco.apps.end()) throw EvalError(EvalError::Kind::UnknownApp, "unknown app \"" + std::string(app) + "\"");
  std::set<Keyword> keywords;
  for (const auto& api : it->second) {
    const auto& tags = eco.apis.at(api);
    keywords.insert(tags.begin(), tags.end());
  }
  if (keywords.size() < 3) {
    throw EvalError(EvalError::Kind::ExcludedApp,
                    "app \"" + std::string(app) + "\" has " + std::to_string(keywords.size()) + " keywords; at least 3 are evaluated");
  }
  return {Query::make(std::vector<std::string>(keywords.begin(), keywords.end())), it->second};
}

}  // namespace

MetricsReport leave_one_out_eval(const Ecosystem& eco, std::string_view app, const EvalConfig& cfg) {
  const auto held = hold_out(eco, app);
  CorrelationGraph g = [&] {
    try {
      return build_wacg(eco, nullptr, app);
    } catch (const GraphError& e) {
      throw EvalError(EvalError::Kind::KeywordLost, std::string("held-out graph is empty: ") + e.what());
    }
  }();
  return evaluate_query(g, held.query, held.truth, cfg);
}

void validate(const SweepSpec& spec) {
  auto bad = [](const std::string& why) { return InputError("invalid sweep: " + why); };
  if (spec.z_values.empty() || spec.p_values.empty() || spec.r_values.empty()) throw bad("z, p and r lists must be nonempty");
  for (const auto z : spec.z_values) {
    if (z == 0) throw bad("z must be >= 1");
  }
  for (const auto p : spec.p_values) {
    if (p == 0) throw bad("p must be >= 1");
  }
  for (const auto r : spec.r_values) {
    if (r < 3) throw bad("r must be >= 3");
  }
  if (spec.repetitions == 0 || spec.apps_per_cell == 0 || spec.k == 0) throw bad("counts must be >= 1");
  if (!(spec.theta >= 0.0 && spec.theta <= 1.0)) throw bad("theta must lie in [0, 1]");
}

std::vector<SweepCell> run_sweep(const Ecosystem& eco, const SweepSpec& spec) {
  validate(spec);
  const auto query_sets = derive_query_sets(eco);

  struct Instance {
    std::size_t r_index;
    std::string app;
    std::uint64_t seed;
  };
  std::vector<Instance> instances;
  for (std::size_t ri = 0; ri < spec.r_values.size(); ++ri) {
    std::vector<std::string> eligible;
    for (const auto& qs : query_sets) {
      if (!qs.excluded_from_eval && qs.keywords.size() == spec.r_values[ri]) eligible.push_back(qs.app);
    }
    for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
      auto chosen = eligible;
      std::mt19937_64 rng(mix(mix(spec.seed, spec.r_values[ri]), rep));
      std::shuffle(chosen.begin(), chosen.end(), rng);
      if (chosen.size() > spec.apps_per_cell) chosen.resize(spec.apps_per_cell);
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        instances.push_back({ri, chosen[i], mix(mix(spec.seed ^ 0x5157ull, rep), fnv1a(chosen[i]))});
      }
    }
  }

  const auto nz = spec.z_values.size();
  const auto np = spec.p_values.size();
  // results[instance][z * np + p]; nullopt = skipped.
  std::vector<std::vector<std::optional<MetricsReport>>> results(instances.size());
  parallel_for(instances.size(), spec.jobs, [&](std::size_t i) {
    const auto& inst = instances[i];
    auto& slots = results[i];
    slots.assign(nz * np, std::nullopt);
    const auto held = hold_out(eco, inst.app);
    std::optional<CorrelationGraph> g;
    try {
      g.emplace(build_wacg(eco, nullptr, inst.app));
    } catch (const GraphError&) {
      return;
    }
    for (std::size_t zi = 0; zi < nz; ++zi) {
      for (std::size_t pi = 0; pi < np; ++pi) {
        EvalConfig cfg;
        cfg.k = spec.k;
        cfg.theta = spec.theta;
        cfg.z = spec.z_values[zi];
        cfg.p = spec.p_values[pi];
        cfg.seed = inst.seed;
        cfg.scope = spec.scope;
        try {
          slots[zi * np + pi] = evaluate_query(*g, held.query, held.truth, cfg);
        } catch (const EvalError& e) {
          if (e.kind() != EvalError::Kind::KeywordLost) throw;
        }
      }
    }
  });

  std::vector<SweepCell> cells;
  for (std::size_t zi = 0; zi < nz; ++zi) {
    for (std::size_t pi = 0; pi < np; ++pi) {
      for (std::size_t ri = 0; ri < spec.r_values.size(); ++ri) {
        SweepCell cell;
        cell.z = spec.z_values[zi];
        cell.p = spec.p_values[pi];
        cell.r = spec.r_values[ri];
        cell.k = spec.k;
        cell.theta = spec.theta;
        cell.seed = spec.seed;
        double mild_sum = 0.0;
        double milc_sum = 0.0;
        std::size_t mild_n = 0;
        std::size_t milc_n = 0;
        for (std::size_t i = 0; i < instances.size(); ++i) {
          if (instances[i].r_index != ri) continue;
          const auto& rep = results[i][zi * np + pi];
          if (!rep) {
            ++cell.n_skipped;
            continue;
          }
          ++cell.n_instances;
          cell.mp += rep->mp;
          cell.mr += rep->mr;
          cell.mean_wall_s += rep->wall_time_seconds;
          if (rep->mild) {
            mild_sum += *rep->mild;
            ++mild_n;
          }
          if (rep->milc) {
            milc_sum += *rep->milc;
            ++milc_n;
          }
        }
        if (cell.n_instances > 0) {
          const auto n = static_cast<double>(cell.n_instances);
          cell.mp /= n;
          cell.mr /= n;
          cell.mean_wall_s /= n;
        }
        if (mild_n > 0) cell.mild = mild_sum / static_cast<double>(mild_n);
        if (milc_n > 0) cell.milc = milc_sum / static_cast<double>(milc_n);
        if (cell.mild) cell.harmonic = harmonic(cell.mp, *cell.mild);
        cells.push_back(cell);
      }
    }
  }
  return cells;
}

std::string sweep_csv(const std::vector<SweepCell>& cells, bool with_timing) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const auto& c : cells) {
    out += std::to_string(c.z) + ',' + std::to_string(c.p) + ',' + std::to_string(c.r) + ',' + std::to_string(c.k) + ',' +
           fmt(c.theta) + ',' + std::to_string(c.seed) + ',' + fmt(c.mp) + ',' + fmt(c.mr) + ',' + fmt(c.mild) + ',' +
           fmt(c.milc) + ',' + fmt(c.harmonic) + ',' + (with_timing ? fmt(c.mean_wall_s) : std::string("NA")) + ',' +
           std::to_string(c.n_instances) + ',' + std::to_string(c.n_skipped) + '\n';
  }
  return out;
}

}  // namespace divcar

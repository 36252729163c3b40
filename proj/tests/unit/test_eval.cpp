#include <doctest.h>

#include "divcar/eval.hpp"
#include "fixtures.hpp"

using namespace divcar;

namespace {

const Ecosystem& default_corpus() {
  static const Ecosystem eco = generate_corpus({});
  return eco;
}

EvalError::Kind eval_error(auto&& fn) {
  try {
    fn();
  } catch (const EvalError& e) {
    return e.kind();
  }
  FAIL("expected an EvalError");
  return EvalError::Kind::InfeasibleSpec;
}

std::vector<std::string> evaluable_apps(const Ecosystem& eco, std::size_t n) {
  std::vector<std::string> out;
  for (const auto& qs : derive_query_sets(eco)) {
    if (qs.keywords.size() >= 3 && qs.keywords.size() <= 6) out.push_back(qs.app);
    if (out.size() == n) break;
  }
  return out;
}

}  // namespace

TEST_CASE("synthetic corpus is reproducible and well formed") {
  const auto& eco = default_corpus();
  CHECK(eco.apis.size() == 500);
  CHECK(eco.apps.size() == 2000);
  CHECK(generate_corpus({}) == eco);
  SyntheticSpec other;
  other.seed = 8;
  CHECK_FALSE(generate_corpus(other) == eco);
  for (const auto& [app, apis] : eco.apps) {
    CHECK(apis.size() >= 3);
    CHECK(apis.size() <= 5);
  }
}

TEST_CASE("synthetic corpus keeps most apis in the largest component") {
  BuildStats stats;
  build_wacg(default_corpus(), &stats);
  CHECK(stats.component_coverage >= 0.9);
  CHECK(stats.vertices >= 450);
}

TEST_CASE("infeasible synthetic specs are rejected") {
  auto kind = [](SyntheticSpec s) { return eval_error([&] { generate_corpus(s); }); };
  CHECK(kind({.n_apis = 0}) == EvalError::Kind::InfeasibleSpec);
  CHECK(kind({.apis_per_app_min = 1}) == EvalError::Kind::InfeasibleSpec);
  CHECK(kind({.apis_per_app_min = 4, .apis_per_app_max = 3}) == EvalError::Kind::InfeasibleSpec);
  CHECK(kind({.n_apis = 4, .apis_per_app_min = 3, .apis_per_app_max = 5}) == EvalError::Kind::InfeasibleSpec);
}

TEST_CASE("holding out an app removes exactly its co-usage") {
  const auto& eco = default_corpus();
  const auto app = evaluable_apps(eco, 1).front();
  const auto full = build_wacg(eco);
  const auto held = build_wacg(eco, nullptr, app);
  const auto& members = eco.apps.at(app);
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const auto before = full.edge_count_between(*full.find_api(members[i]), *full.find_api(members[j]));
      REQUIRE(before);
      const auto u = held.find_api(members[i]);
      const auto v = held.find_api(members[j]);
      const auto after = u && v ? held.edge_count_between(*u, *v) : std::nullopt;
      CHECK(after.value_or(0) + 1 == *before);
    }
  }
}

TEST_CASE("leave-one-out errors") {
  const auto eco = divcar::test::parse(
      "{\"api\":\"x\",\"tags\":[\"a\"]}\n{\"api\":\"y\",\"tags\":[\"b\"]}\n",
      "{\"app\":\"p\",\"apis\":[\"x\",\"y\"]}\n{\"app\":\"q\",\"apis\":[\"x\",\"y\"]}\n");
  CHECK(eval_error([&] { leave_one_out_eval(eco, "nope", {}); }) == EvalError::Kind::UnknownApp);
  CHECK(eval_error([&] { leave_one_out_eval(eco, "p", {}); }) == EvalError::Kind::ExcludedApp);

  // The only API tagged "c" loses its only co-usage with the holdout.
  const auto lost = divcar::test::parse(
      "{\"api\":\"x\",\"tags\":[\"a\"]}\n{\"api\":\"y\",\"tags\":[\"b\"]}\n{\"api\":\"z\",\"tags\":[\"c\"]}\n",
      "{\"app\":\"p\",\"apis\":[\"x\",\"y\",\"z\"]}\n{\"app\":\"q\",\"apis\":[\"x\",\"y\"]}\n");
  CHECK(eval_error([&] { leave_one_out_eval(lost, "p", {}); }) == EvalError::Kind::KeywordLost);
}

TEST_CASE("leave-one-out evaluation is deterministic and finds held-out apis") {
  const auto& eco = default_corpus();
  EvalConfig cfg;
  cfg.z = 20;
  cfg.p = 60;
  double mp_sum = 0;
  const auto apps = evaluable_apps(eco, 8);
  for (const auto& app : apps) {
    const auto a = leave_one_out_eval(eco, app, cfg);
    const auto b = leave_one_out_eval(eco, app, cfg);
    CHECK(a.mp == b.mp);
    CHECK(a.mild == b.mild);
    CHECK(a.k_effective >= 1);
    CHECK(a.k_effective <= cfg.k);
    mp_sum += a.mp;
  }
  CHECK(mp_sum / static_cast<double>(apps.size()) > 0.1);
}

TEST_CASE("whole-graph samples give the identical-list diversity floor") {
  const auto& eco = default_corpus();
  EvalConfig cfg;
  cfg.z = 5;
  cfg.p = 100000;
  cfg.scope = ListScope::AllSubgraphs;
  const auto r = leave_one_out_eval(eco, evaluable_apps(eco, 1).front(), cfg);
  REQUIRE(r.mild);
  CHECK(*r.mild == 0.5);
  CHECK(r.k_effective == 5);
}

TEST_CASE("sweep output is independent of worker count") {
  const auto& eco = default_corpus();
  SweepSpec spec;
  spec.z_values = {2, 4};
  spec.p_values = {30};
  spec.r_values = {3, 4};
  spec.apps_per_cell = 3;
  spec.jobs = 1;
  const auto serial = sweep_csv(run_sweep(eco, spec), false);
  spec.jobs = 3;
  CHECK(sweep_csv(run_sweep(eco, spec), false) == serial);
  CHECK(serial.rfind(std::string(kSweepCsvHeader) + "\n", 0) == 0);
  CHECK(std::count(serial.begin(), serial.end(), '\n') == 5);
  CHECK(serial.find(",NA,3,0\n") != std::string::npos);
}

TEST_CASE("sweep specs are validated") {
  SweepSpec spec;
  spec.r_values = {2};
  CHECK_THROWS_AS(validate(spec), InputError);
  spec = {};
  spec.z_values = {};
  CHECK_THROWS_AS(validate(spec), InputError);
  spec = {};
  spec.theta = 2;
  CHECK_THROWS_AS(validate(spec), InputError);
}

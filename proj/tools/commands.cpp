#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "divcar/eval.hpp"
#include "divcar/graph.hpp"
#include "divcar/ingest.hpp"
#include "divcar/oracle.hpp"
#include "divcar/parallel.hpp"
#include "divcar/pipeline.hpp"
#include "divcar/steiner.hpp"

namespace divcar::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

/// No sampled subgraph produced a tree.
class InfeasibleQuery : public InputError {
 public:
  using InputError::InputError;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& payload, std::ostream& out) {
  if (path.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write \"" + path + "\"");
  file << payload;
  if (!file) throw InputError("failed writing \"" + path + "\"");
}

Ecosystem load_corpus(const std::string& apis_path, const std::string& apps_path) {
  std::ifstream apis(apis_path);
  if (!apis) throw InputError("cannot open \"" + apis_path + "\"");
  std::ifstream apps(apps_path);
  if (!apps) throw InputError("cannot open \"" + apps_path + "\"");
  return parse_corpus(apis, apps);
}

std::vector<std::string> split_keywords(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(csv);
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

ListScope parse_scope(const std::string& s) {
  if (s == "ranked") return ListScope::RankedTopK;
  if (s == "subgraphs") return ListScope::AllSubgraphs;
  throw InputError("unknown scope \"" + s + "\" (expected ranked or subgraphs)");
}

ordered_json optional_number(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json report_json(const MetricsReport& r, bool with_timing) {
  ordered_json j;
  j["mp"] = r.mp;
  j["mr"] = r.mr;
  j["mild"] = optional_number(r.mild);
  j["milc"] = optional_number(r.milc);
  j["milc_max_scored"] = r.milc_max_scored;
  j["harmonic"] = optional_number(r.harmonic);
  j["k_effective"] = r.k_effective;
  j["wall_time_seconds"] = with_timing ? ordered_json(r.wall_time_seconds) : ordered_json(nullptr);
  return j;
}

struct Options {
  std::string apis, apps, graph, keywords, out, scope = "ranked", dump_subgraphs;
  std::vector<std::string> app_ids;
  std::size_t z = 100, p = 100, k = kDefaultK, jobs = 1, instances = 100, repetitions = 1;
  std::vector<std::size_t> z_list{10, 100}, p_list{100}, r_list{3, 4, 5, 6};
  double theta = kDefaultTheta;
  std::uint64_t seed = kDefaultSeed;
  bool no_timing = false;
  // gen
  SyntheticSpec synth;
  // verify
  std::size_t max_vertices = 10, max_r = 3;
};

int cmd_gen(const Options& o, std::ostream& out) {
  const auto eco = generate_corpus(o.synth);
  std::ofstream apis(o.apis);
  std::ofstream apps(o.apps);
  if (!apis || !apps) throw InputError("cannot write corpus files");
  write_corpus(eco, apis, apps);
  ordered_json stats{{"apis", eco.apis.size()}, {"apps", eco.apps.size()}};
  out << stats.dump() << '\n';
  return kOk;
}

int cmd_build(const Options& o, std::ostream& out) {
  const auto eco = load_corpus(o.apis, o.apps);
  BuildStats stats;
  const auto g = build_wacg(eco, &stats);
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw InputError("cannot write \"" + o.out + "\"");
  file << serialize(g);
  ordered_json j{{"vertices", stats.vertices},
                 {"edges", stats.edges},
                 {"apis_total", stats.apis_total},
                 {"apis_with_edges", stats.apis_with_edges},
                 {"component_coverage", stats.component_coverage}};
  out << j.dump() << '\n';
  return kOk;
}

int cmd_query(const Options& o, std::ostream& out, std::ostream& err) {
  const auto g = deserialize(read_file(o.graph));
  const auto q = Query::make(split_keywords(o.keywords));
  RecommendConfig cfg;
  cfg.sampling = {o.z, o.p, o.seed, 100};
  cfg.k = o.k;
  cfg.theta = o.theta;
  cfg.jobs = o.jobs;
  const auto start = std::chrono::steady_clock::now();
  const auto rec = recommend(g, q, cfg);
  const auto seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!o.dump_subgraphs.empty()) {
    ordered_json dump = ordered_json::array();
    for (const auto& s : rec.samples) {
      ordered_json ids = ordered_json::array();
      for (const auto v : s.vertices()) ids.push_back(g.vertex(v).api);
      dump.push_back(std::move(ids));
    }
    write_output(o.dump_subgraphs, dump.dump() + "\n", out);
  }
  if (rec.result.lists.empty()) {
    const auto coverage = coverage_report(rec.samples, q);
    std::vector<Keyword> never;
    for (const auto& k : q.keywords()) {
      const bool seen = std::any_of(coverage.begin(), coverage.end(),
                                    [&](const auto& c) { return std::find(c.begin(), c.end(), k) != c.end(); });
      if (!seen) never.push_back(k);
    }
    std::string msg = "no sampled subgraph admits a tree covering the query";
    if (!never.empty()) {
      msg += "; never covered:";
      for (const auto& k : never) msg += " " + k;
    }
    throw InfeasibleQuery(msg);
  }
  err << "query: " << rec.result.lists.size() << "/" << o.k << " lists in " << seconds << " s\n";
  write_output(o.out, result_json(q, rec.result) + "\n", out);
  return kOk;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  const auto eco = load_corpus(o.apis, o.apps);
  std::vector<std::string> apps = o.app_ids;
  if (apps.empty()) {
    for (const auto& qs : derive_query_sets(eco)) {
      if (qs.keywords.size() >= 3) apps.push_back(qs.app);
    }
    std::mt19937_64 rng(o.seed);
    std::shuffle(apps.begin(), apps.end(), rng);
    if (apps.size() > o.instances) apps.resize(o.instances);
    std::sort(apps.begin(), apps.end());
  }
  EvalConfig cfg;
  cfg.k = o.k;
  cfg.theta = o.theta;
  cfg.z = o.z;
  cfg.p = o.p;
  cfg.seed = o.seed;
  cfg.scope = parse_scope(o.scope);

  std::vector<std::optional<MetricsReport>> reports(apps.size());
  std::vector<std::string> skipped(apps.size());
  parallel_for(apps.size(), o.jobs, [&](std::size_t i) {
    try {
      reports[i] = leave_one_out_eval(eco, apps[i], cfg);
    } catch (const EvalError& e) {
      // A single named app that cannot be evaluated is an input error.
      if (!o.app_ids.empty() && e.kind() != EvalError::Kind::KeywordLost) throw;
      skipped[i] = e.what();
    }
  });

  ordered_json doc;
  doc["config"] = {{"z", o.z}, {"p", o.p}, {"k", o.k}, {"theta", o.theta}, {"seed", o.seed}, {"scope", o.scope}};
  auto& rows = doc["instances"] = ordered_json::array();
  double mp_sum = 0, mr_sum = 0, wall_sum = 0, mild_sum = 0;
  std::size_t n = 0, mild_n = 0;
  for (std::size_t i = 0; i < apps.size(); ++i) {
    ordered_json row{{"app", apps[i]}};
    if (!reports[i]) {
      row["skipped"] = skipped[i];
    } else {
      row.update(report_json(*reports[i], !o.no_timing));
      mp_sum += reports[i]->mp;
      mr_sum += reports[i]->mr;
      wall_sum += reports[i]->wall_time_seconds;
      if (reports[i]->mild) {
        mild_sum += *reports[i]->mild;
        ++mild_n;
      }
      ++n;
    }
    rows.push_back(std::move(row));
  }
  ordered_json mean;
  mean["n_instances"] = n;
  mean["n_skipped"] = apps.size() - n;
  if (n > 0) {
    mean["mp"] = mp_sum / static_cast<double>(n);
    mean["mr"] = mr_sum / static_cast<double>(n);
    mean["mild"] = mild_n > 0 ? ordered_json(mild_sum / static_cast<double>(mild_n)) : ordered_json(nullptr);
    mean["harmonic"] = mild_n > 0 ? ordered_json(harmonic(mp_sum / static_cast<double>(n), mild_sum / static_cast<double>(mild_n)))
                                  : ordered_json(nullptr);
    mean["wall_time_seconds"] = o.no_timing ? ordered_json(nullptr) : ordered_json(wall_sum / static_cast<double>(n));
  }
  doc["mean"] = std::move(mean);
  err << "eval: " << n << " evaluated, " << apps.size() - n << " skipped\n";
  write_output(o.out, doc.dump(2) + "\n", out);
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  const auto eco = load_corpus(o.apis, o.apps);
  SweepSpec spec;
  spec.z_values = o.z_list;
  spec.p_values = o.p_list;
  spec.r_values = o.r_list;
  spec.repetitions = o.repetitions;
  spec.apps_per_cell = o.instances;
  spec.seed = o.seed;
  spec.k = o.k;
  spec.theta = o.theta;
  spec.scope = parse_scope(o.scope);
  spec.jobs = o.jobs;
  const auto cells = run_sweep(eco, spec);
  for (const auto& c : cells) {
    err << "cell z=" << c.z << " p=" << c.p << " r=" << c.r << ": " << c.n_instances << " instances, " << c.n_skipped
        << " skipped\n";
  }
  write_output(o.out, sweep_csv(cells, !o.no_timing), out);
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  RandomInstanceShape shape;
  shape.max_vertices = o.max_vertices;
  shape.max_query_width = o.max_r;
  if (o.max_vertices > kOracleMaxVertices) throw OracleTooLarge(o.max_vertices);

  struct Outcome {
    bool feasible = false;
    bool match = true;
    bool valid = true;
  };
  std::vector<Outcome> outcomes(o.instances);
  parallel_for(o.instances, o.jobs, [&](std::size_t i) {
    const auto inst = make_random_instance(sample_seed(o.seed, i), shape);
    const auto found = search_min_gst(inst.graph, inst.query);
    const auto expected = oracle_exact(inst.graph, inst.query);
    auto& r = outcomes[i];
    r.feasible = expected.has_value();
    r.match = found.has_value() == expected.has_value() && (!found || found->total_length == expected->total_length);
    if (found) r.valid = check_tree(Subgraph::whole(inst.graph), inst.query, *found).empty();
  });

  std::size_t feasible = 0, mismatches = 0, invalid = 0;
  ordered_json failures = ordered_json::array();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    feasible += outcomes[i].feasible ? 1 : 0;
    if (!outcomes[i].match) ++mismatches;
    if (!outcomes[i].valid) ++invalid;
    if ((!outcomes[i].match || !outcomes[i].valid) && failures.size() < 20) failures.push_back(i);
  }
  ordered_json doc{{"instances", o.instances},     {"seed", o.seed},          {"feasible", feasible},
                   {"mismatches", mismatches},     {"invalid_trees", invalid}, {"failing_instances", failures}};
  write_output(o.out, doc.dump() + "\n", out);
  if (mismatches > 0 || invalid > 0) {
    err << "verify: " << mismatches << " mismatches, " << invalid << " invalid trees\n";
    return kInternalError;
  }
  return kOk;
}

int exit_code_for(std::ostream& err) {
  try {
    throw;
  } catch (const QueryError& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == QueryError::Kind::UnknownKeyword ? kUnknownKeyword : kInputError;
  } catch (const KeywordUncoveredInGraph& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasibleQuery;
  } catch (const SamplerError& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasibleQuery;
  } catch (const InfeasibleQuery& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasibleQuery;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const GraphError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Diverse, compatibility-optimal web API recommendation"};
  app.require_subcommand(1);
  Options o;

  auto add_corpus = [&](CLI::App* sub) {
    sub->add_option("--apis", o.apis, "API records (JSON lines)")->required();
    sub->add_option("--apps", o.apps, "App records (JSON lines)")->required();
  };
  auto add_ranking = [&](CLI::App* sub) {
    sub->add_option("--k", o.k, "Number of recommendation lists")->check(CLI::PositiveNumber);
    sub->add_option("--theta", o.theta, "Minimum pairwise diversity")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* gen = app.add_subcommand("gen", "Write a synthetic corpus");
  gen->add_option("--apis", o.apis, "Output API records")->required();
  gen->add_option("--apps", o.apps, "Output app records")->required();
  gen->add_option("--n-apis", o.synth.n_apis);
  gen->add_option("--n-apps", o.synth.n_apps);
  gen->add_option("--n-keywords", o.synth.n_keywords);
  gen->add_option("--communities", o.synth.community_count);
  gen->add_option("--apis-per-app-min", o.synth.apis_per_app_min);
  gen->add_option("--apis-per-app-max", o.synth.apis_per_app_max);
  gen->add_option("--seed", o.synth.seed);

  auto* build = app.add_subcommand("build", "Build the correlation graph");
  add_corpus(build);
  build->add_option("--out", o.out, "Graph file to write")->required();

  auto* query = app.add_subcommand("query", "Recommend API lists for keywords");
  query->add_option("--graph", o.graph, "Graph file")->required();
  query->add_option("--keywords", o.keywords, "Comma-separated keywords")->required();
  query->add_option("--z", o.z, "Sampled subgraphs")->check(CLI::PositiveNumber);
  query->add_option("--p", o.p, "Vertices per sample")->check(CLI::PositiveNumber);
  query->add_option("--out", o.out, "Result file (default: standard output)");
  query->add_option("--dump-subgraphs", o.dump_subgraphs, "Write sampled vertex sets as JSON");
  add_ranking(query);

  auto* eval = app.add_subcommand("eval", "Leave-one-app-out evaluation");
  add_corpus(eval);
  eval->add_option("--app", o.app_ids, "App to hold out (repeatable)");
  eval->add_option("--instances", o.instances, "Apps to sample when --app is absent")->check(CLI::PositiveNumber);
  eval->add_option("--z", o.z)->check(CLI::PositiveNumber);
  eval->add_option("--p", o.p)->check(CLI::PositiveNumber);
  eval->add_option("--scope", o.scope, "ranked | subgraphs");
  eval->add_option("--out", o.out);
  eval->add_flag("--no-timing", o.no_timing, "Omit wall times from the output");
  add_ranking(eval);

  auto* sweep = app.add_subcommand("sweep", "Grid of (z, p, r) evaluations as CSV");
  add_corpus(sweep);
  sweep->add_option("--z", o.z_list)->delimiter(',');
  sweep->add_option("--p", o.p_list)->delimiter(',');
  sweep->add_option("--r", o.r_list)->delimiter(',');
  sweep->add_option("--repetitions", o.repetitions)->check(CLI::PositiveNumber);
  sweep->add_option("--instances", o.instances, "Held-out apps per (r, repetition)")->check(CLI::PositiveNumber);
  sweep->add_option("--scope", o.scope, "ranked | subgraphs");
  sweep->add_option("--out", o.out);
  sweep->add_flag("--no-timing", o.no_timing, "Write NA in the wall-time column");
  add_ranking(sweep);

  auto* verify = app.add_subcommand("verify", "Check the search against the brute-force oracle");
  verify->add_option("--instances", o.instances)->check(CLI::PositiveNumber);
  verify->add_option("--seed", o.seed);
  verify->add_option("--max-vertices", o.max_vertices)->check(CLI::Range(1, 14));
  verify->add_option("--max-r", o.max_r)->check(CLI::Range(1, 8));
  verify->add_option("--jobs", o.jobs)->check(CLI::PositiveNumber);
  verify->add_option("--out", o.out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (gen->parsed()) return cmd_gen(o, out);
    if (build->parsed()) return cmd_build(o, out);
    if (query->parsed()) return cmd_query(o, out, err);
    if (eval->parsed()) return cmd_eval(o, out, err);
    if (sweep->parsed()) return cmd_sweep(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out, err);
  } catch (...) {
    return exit_code_for(err);
  }
  return kInputError;
}

}  // namespace divcar::cli

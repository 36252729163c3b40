#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "commands.hpp"
#include "divcar/eval.hpp"
#include "divcar/sampler.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o;
  std::ostringstream e;
  const int code = divcar::cli::run(args, o, e);
  if (out) *out = o.str();
  return code;
}

}  // namespace

// Frozen outputs for the default synthetic corpus. A change here means the
// corpus generator, graph construction, sampling or ranking changed.
TEST_CASE("default corpus build and query match the frozen outputs") {
  const fs::path golden = DIVCAR_GOLDEN_DIR;
  const auto dir = fs::temp_directory_path() / ("divcar-golden-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto apis = (dir / "apis.jsonl").string();
  const auto apps = (dir / "apps.jsonl").string();
  const auto graph = (dir / "g.json").string();

  REQUIRE(run({"gen", "--apis", apis, "--apps", apps}) == 0);
  std::string stats;
  REQUIRE(run({"build", "--apis", apis, "--apps", apps, "--out", graph}, &stats) == 0);
  CHECK(stats == slurp(golden / "build_stats.json"));

  std::string result;
  REQUIRE(run({"query", "--graph", graph, "--keywords", "kw04,kw05,kw19", "--k", "10", "--theta", "0.5"}, &result) == 0);
  CHECK(result == slurp(golden / "query_kw04_kw05_kw19.json"));
  fs::remove_all(dir);
}

TEST_CASE("most default-size samples cover every query keyword") {
  const auto g = divcar::build_wacg(divcar::generate_corpus({}));
  const auto q = divcar::Query::make({"kw04", "kw05", "kw19"});
  const auto samples = divcar::sample_subgraphs(g, q, {});
  const auto report = divcar::coverage_report(samples, q);
  const auto full = std::count_if(report.begin(), report.end(), [&](const auto& c) { return c.size() == q.size(); });
  CHECK(static_cast<double>(full) / static_cast<double>(samples.size()) >= 0.8);
}

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "degseq_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" DEGSEQ_CLI_PATH "\" " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

TEST(Cli, OracleFourCycles) {
  const auto out = scratch("oracle");
  ASSERT_EQ(run_cli("oracle --degrees 2,2,2,2 --out " + out.string()), 0);
  const auto family = slurp(out / "family.txt");
  EXPECT_EQ(std::count(family.begin(), family.end(), '\n'), 14);  // 3 blocks of 4 edges, 2 separators
  std::istringstream wstar(slurp(out / "wstar.csv"));
  std::string line;
  std::getline(wstar, line);
  EXPECT_EQ(line, "i,j,value");
  int rows = 0;
  while (std::getline(wstar, line)) {
    const double v = std::stod(line.substr(line.rfind(',') + 1));
    EXPECT_NEAR(v, 2.0 / 3.0, 1e-15);
    ++rows;
  }
  EXPECT_EQ(rows, 6);
  const auto meta = read_json(out / "metadata.json");
  EXPECT_EQ(meta["kind"], "oracle");
  EXPECT_EQ(meta["exit_code"], 0);
}

TEST(Cli, ExitCodes) {
  const auto out = scratch("codes");
  EXPECT_EQ(run_cli("sample-gnd --degrees 3,3,1,1 --out " + out.string()), 2);
  EXPECT_EQ(run_cli("oracle --generator \"regular(12,2)\" --out " + out.string()), 3);
  EXPECT_EQ(run_cli("oracle --degrees 2,2,2,2 --out " + out.string(), "DEGSEQ_ORACLE_CAP=3"), 3);
  EXPECT_EQ(run_cli("sample-gnd --degrees-file /nonexistent/d.txt --out " + out.string()), 4);
  EXPECT_EQ(run_cli("oracle --degrees 2,2,2,2 --out /proc/degseq_forbidden"), 4);
  EXPECT_EQ(run_cli("sample-gnd --runs 0 --degrees 2,2,2"), 1);
  EXPECT_EQ(run_cli("--degrees 2,2,2"), 1);
  EXPECT_EQ(run_cli("verify-suite --criteria C99 --out " + out.string()), 1);
  EXPECT_EQ(run_cli("--help"), 0);
}

TEST(Cli, VerifySubset) {
  const auto out = scratch("verify");
  ASSERT_EQ(run_cli("verify-suite --criteria C7 --out " + out.string()), 0);
  const auto results = read_json(out / "verify.json");
  ASSERT_EQ(results.size(), 1u);
  EXPECT_EQ(results[0]["id"], "C7");
  EXPECT_EQ(results[0]["passed"], true);
}

TEST(Cli, DeterministicOutputs) {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  const std::string args = "couple --generator \"regular(30,4)\" --runs 6 --zeta 0.4 --write-graphs --seed 17";
  ASSERT_EQ(run_cli(args + " --out " + a.string()), 0);
  ASSERT_EQ(run_cli(args + " --serial --out " + b.string()), 0);
  std::size_t compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), a);
    ASSERT_TRUE(fs::exists(b / rel)) << rel;
    if (rel == "metadata.json") {
      auto ma = read_json(entry.path());
      auto mb = read_json(b / rel);
      ma.erase("wall_time_seconds");
      mb.erase("wall_time_seconds");
      EXPECT_EQ(ma, mb);
    } else {
      EXPECT_EQ(slurp(entry.path()), slurp(b / rel)) << rel;
    }
    ++compared;
  }
  EXPECT_GT(compared, 6u);
  std::istringstream traces(slurp(a / "traces.ndjson"));
  std::string line;
  int count = 0;
  while (std::getline(traces, line)) ++count;
  EXPECT_EQ(count, 6);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto out = scratch("config");
  const auto cfg = out / "run.toml";
  std::ofstream(cfg) << "seed = 99\nruns = 7\ndegrees = \"2,2,2,2\"\n";
  ASSERT_EQ(run_cli("sample-gnd --config " + cfg.string() + " --runs 3 --out " + (out / "o").string()), 0);
  const auto meta = read_json(out / "o" / "metadata.json");
  EXPECT_EQ(meta["seed"], 99);
  EXPECT_EQ(meta["runs"], 3);
}

TEST(Cli, SampleGnwConstant) {
  const auto out = scratch("gnw");
  ASSERT_EQ(run_cli("sample-gnw --w-constant 0.3 --n 5 --runs 200 --out " + out.string()), 0);
  EXPECT_TRUE(fs::exists(out / "marginals.csv"));
}

}  // namespace

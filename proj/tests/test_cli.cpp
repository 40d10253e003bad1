#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "contactline/commands.hpp"
#include "contactline/errors.hpp"
#include "contactline/io.hpp"

namespace {

using namespace contactline;
namespace fs = std::filesystem;
using json = nlohmann::json;

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("contactline_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
}

json read_json(const fs::path& path) { return json::parse(io::read_text(path)); }

int run_tool(const std::string& args) {
  const std::string command = std::string(CONTACTLINE_TOOL) + " " + args + " 2>/dev/null";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

constexpr const char* kShortRun = "grid.N=199\nsolver.tol=1e-4\nstop.t_max=0.02\n";

TEST(OutputRoot, Precedence) {
  ::unsetenv(cli::kOutputEnv);
  EXPECT_EQ(cli::resolve_output_root(std::nullopt, "fallback"), fs::path("fallback"));
  ::setenv(cli::kOutputEnv, "/tmp/from_env", 1);
  EXPECT_EQ(cli::resolve_output_root(std::nullopt, "fallback"), fs::path("/tmp/from_env"));
  EXPECT_EQ(cli::resolve_output_root(std::string("flag"), "fallback"), fs::path("flag"));
  ::unsetenv(cli::kOutputEnv);
}

TEST(Simulate, WritesSeriesSnapshotsAndSummary) {
  const auto dir = scratch_dir("simulate");
  write_file(dir / "run.cfg", std::string(kShortRun) + "output.snapshot_times=0.01\n");
  std::ostringstream log;
  ASSERT_EQ(cli::cmd_simulate({dir / "run.cfg", (dir / "out").string()}, log), 0) << log.str();

  const auto series_text = io::read_text(dir / "out" / "series.csv");
  EXPECT_EQ(series_text.substr(0, series_text.find('\n')), io::kSeriesHeader);
  EXPECT_TRUE(fs::exists(dir / "out" / "u_t0.01.csv"));
  EXPECT_EQ(io::read_text(dir / "out" / "u_t0.01.csv").substr(0, 4), "x,u\n");

  const auto summary = read_json(dir / "out" / "summary.json");
  EXPECT_EQ(summary["termination_reason"], "horizon-reached");
  EXPECT_DOUBLE_EQ(summary["terminal_time"].get<double>(), 0.02);
  const auto series = io::read_series_csv(dir / "out" / "series.csv");
  EXPECT_EQ(summary["step_count"], series.records.back().step);
  EXPECT_EQ(summary["config"]["sources"]["grid.N"], "user");
  EXPECT_EQ(summary["config"]["sources"]["ic.a"], "default");
}

TEST(Simulate, EnvironmentSetsOutputRoot) {
  const auto dir = scratch_dir("env");
  write_file(dir / "run.cfg", kShortRun);
  ::setenv(cli::kOutputEnv, (dir / "env_out").c_str(), 1);
  std::ostringstream log;
  EXPECT_EQ(cli::cmd_simulate({dir / "run.cfg", std::nullopt}, log), 0);
  ::unsetenv(cli::kOutputEnv);
  EXPECT_TRUE(fs::exists(dir / "env_out" / "summary.json"));
}

TEST(Simulate, BadConfigExitsOne) {
  const auto dir = scratch_dir("badcfg");
  write_file(dir / "neg.cfg", "ic.a=-1\n");
  write_file(dir / "unknown.cfg", "ic.q=1\n");
  std::ostringstream log;
  EXPECT_EQ(cli::cmd_simulate({dir / "neg.cfg", std::nullopt}, log), 1);
  EXPECT_NE(log.str().find("a > 0"), std::string::npos);
  EXPECT_EQ(cli::cmd_simulate({dir / "unknown.cfg", std::nullopt}, log), 1);
  EXPECT_EQ(cli::cmd_simulate({dir / "missing.cfg", std::nullopt}, log), 1);
}

TEST(Simulate, EmptyConfigRunsToBlowup) {
  const auto dir = scratch_dir("defaults");
  write_file(dir / "empty.cfg", "");
  std::ostringstream log;
  ASSERT_EQ(cli::cmd_simulate({dir / "empty.cfg", (dir / "out").string()}, log), 0);
  const auto summary = read_json(dir / "out" / "summary.json");
  const std::string reason = summary["termination_reason"];
  EXPECT_TRUE(reason == "dt-underflow" || reason == "beta-vanished" || reason == "V-exceeded")
      << reason;
  EXPECT_GT(summary["terminal_time"].get<double>(), 1.8);
  EXPECT_LT(summary["terminal_time"].get<double>(), 1.9);
}

class FitCommand : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = scratch_dir("fit");
    // Synthetic power-law series written in the simulate schema.
    TimeSeries s;
    for (int k = 0; k < 400; ++k) {
      Record r;
      r.step = static_cast<std::size_t>(k);
      r.t = r.T = 1.0 - std::pow(10.0, -0.01 * k);
      r.dt = k == 0 ? 0.0 : r.t - s.records.back().t;
      r.V = -std::pow(1.0 - r.t, -0.5);
      s.records.push_back(r);
    }
    io::write_series_csv(dir / "series.csv", s);
  }
  fs::path dir;
};

TEST_F(FitCommand, MultipleWindowsInOneCall) {
  std::ostringstream log;
  cli::FitArgs args{dir / "series.csv", "power", {0.5, 0.9}, {}, std::nullopt};
  ASSERT_EQ(cli::cmd_fit(args, log), 0) << log.str();
  const auto doc = read_json(dir / "fit.json");
  ASSERT_EQ(doc["fits"].size(), 2u);
  for (const auto& f : doc["fits"]) {
    EXPECT_NEAR(f["rate"].get<double>(), 0.5, 1e-3);
    EXPECT_NEAR(f["t0"].get<double>(), 1.0, 1e-4);
  }
}

TEST_F(FitCommand, EndsPerWindow) {
  std::ostringstream log;
  cli::FitArgs args{dir / "series.csv", "log", {0.5, 0.6}, {0.9, 0.95}, (dir / "o").string()};
  ASSERT_EQ(cli::cmd_fit(args, log), 0);
  const auto doc = read_json(dir / "o" / "fit.json");
  EXPECT_LE(doc["fits"][0]["window"][1].get<double>(), 0.9);
  EXPECT_LE(doc["fits"][1]["window"][1].get<double>(), 0.95);
  args.ends = {0.9, 0.95, 0.99};
  EXPECT_EQ(cli::cmd_fit(args, log), 1);
}

TEST_F(FitCommand, ReparsedSeriesGivesIdenticalFitJson) {
  std::ostringstream log;
  cli::FitArgs args{dir / "series.csv", "power", {0.5}, {}, (dir / "a").string()};
  ASSERT_EQ(cli::cmd_fit(args, log), 0);
  io::write_series_csv(dir / "copy.csv", io::read_series_csv(dir / "series.csv"));
  args.series = dir / "copy.csv";
  args.out = (dir / "b").string();
  ASSERT_EQ(cli::cmd_fit(args, log), 0);
  EXPECT_EQ(io::read_text(dir / "a" / "fit.json"), io::read_text(dir / "b" / "fit.json"));
}

TEST_F(FitCommand, TwoPointSeriesExitsThree) {
  const auto text = io::read_text(dir / "series.csv");
  std::istringstream in(text);
  std::string l0, l1, l2;
  std::getline(in, l0);
  std::getline(in, l1);
  std::getline(in, l2);
  write_file(dir / "two.csv", l0 + "\n" + l1 + "\n" + l2 + "\n");
  std::ostringstream log;
  for (const char* law : {"power", "log", "loglogT"})
    EXPECT_EQ(cli::cmd_fit({dir / "two.csv", law, {0.0}, {}, std::nullopt}, log), 3) << law;
}

TEST_F(FitCommand, UnreadableInputExitsOne) {
  std::ostringstream log;
  EXPECT_EQ(cli::cmd_fit({dir / "missing.csv", "power", {0.0}, {}, std::nullopt}, log), 1);
  write_file(dir / "garbage.csv", "not,a,series\n");
  EXPECT_EQ(cli::cmd_fit({dir / "garbage.csv", "power", {0.0}, {}, std::nullopt}, log), 1);
}

TEST_F(FitCommand, ShallowSlopeExitsThree) {
  TimeSeries s;
  for (int k = 1; k <= 50; ++k) {
    Record r;
    r.step = static_cast<std::size_t>(k);
    r.t = r.T = k;
    r.V = -std::pow(r.T, 0.2);
    s.records.push_back(r);
  }
  io::write_series_csv(dir / "shallow.csv", s);
  std::ostringstream log;
  EXPECT_EQ(cli::cmd_fit({dir / "shallow.csv", "loglogT", {1.0}, {}, std::nullopt}, log), 3);
}

TEST(Sweep, PairsAndNames) {
  const auto pairs = cli::parse_pairs("a,b\n0.5,0\n0.5,0.6\n# note\n0.5,0\n");
  ASSERT_EQ(pairs.size(), 3u);
  EXPECT_EQ(cli::sweep_directory_names(pairs),
            (std::vector<std::string>{"a0.5_b0-1", "a0.5_b0.6", "a0.5_b0-2"}));
  EXPECT_TRUE(cli::parse_pairs("").empty());
  EXPECT_THROW(cli::parse_pairs("0.5,0\nx,y\n"), ParseError);
}

TEST(Sweep, RunsEveryPair) {
  const auto dir = scratch_dir("sweep");
  write_file(dir / "base.cfg", kShortRun);
  write_file(dir / "pairs.csv", "0.5,0\n0.5,0.6\n0.5,0\n");
  std::ostringstream log;
  ASSERT_EQ(cli::cmd_sweep({dir / "pairs.csv", dir / "base.cfg", (dir / "out").string()}, log), 0);
  const auto index = read_json(dir / "out" / "index.json");
  ASSERT_EQ(index["runs"].size(), 3u);
  EXPECT_DOUBLE_EQ(index["runs"][0]["V0_analytic"].get<double>(), -1.25);
  EXPECT_DOUBLE_EQ(index["runs"][1]["V0_analytic"].get<double>(), 2.35);
  for (const auto& run : index["runs"]) {
    EXPECT_EQ(run["status"], "ok");
    EXPECT_TRUE(run.contains("terminal_time"));
    EXPECT_TRUE(fs::exists(dir / "out" / run["dir"].get<std::string>() / "summary.json"));
  }
  EXPECT_NE(index["runs"][0]["dir"], index["runs"][2]["dir"]);
}

TEST(Sweep, EmptyOrAllFailingExitsOne) {
  const auto dir = scratch_dir("sweep_fail");
  write_file(dir / "base.cfg", kShortRun);
  write_file(dir / "empty.csv", "a,b\n");
  write_file(dir / "bad.csv", "-1,0\n0.5,-2\n");
  write_file(dir / "mixed.csv", "-1,0\n0.5,0\n");
  std::ostringstream log;
  EXPECT_EQ(cli::cmd_sweep({dir / "empty.csv", dir / "base.cfg", (dir / "e").string()}, log), 1);
  EXPECT_EQ(cli::cmd_sweep({dir / "bad.csv", dir / "base.cfg", (dir / "b").string()}, log), 1);
  EXPECT_EQ(cli::cmd_sweep({dir / "mixed.csv", dir / "base.cfg", (dir / "m").string()}, log), 0);
  const auto index = read_json(dir / "m" / "index.json");
  EXPECT_EQ(index["runs"][0]["status"], "failed");
  EXPECT_EQ(index["runs"][1]["status"], "ok");
}

TEST(Tool, ExitCodes) {
  const auto dir = scratch_dir("tool");
  write_file(dir / "ok.cfg", kShortRun);
  write_file(dir / "bad.cfg", "ic.a=-1\n");
  const std::string out = " --out " + (dir / "out").string();
  EXPECT_EQ(run_tool("simulate --config " + (dir / "ok.cfg").string() + out), 0);
  EXPECT_EQ(run_tool("simulate --config " + (dir / "bad.cfg").string() + out), 1);
  const auto text = io::read_text(dir / "out" / "series.csv");
  const auto cut = text.find('\n', text.find('\n', text.find('\n') + 1) + 1);
  write_file(dir / "two.csv", text.substr(0, cut + 1));
  EXPECT_EQ(run_tool("fit --series " + (dir / "two.csv").string() + " --law log --start 0"), 3);
  EXPECT_EQ(run_tool("fit --series " + (dir / "nope.csv").string() + " --law power --start 0"), 1);
  EXPECT_EQ(run_tool("fit --series x.csv --law cubic --start 0"), 1);
  EXPECT_EQ(run_tool("frobnicate"), 1);
}

}  // namespace

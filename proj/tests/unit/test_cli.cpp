#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "decharge/cli.hpp"

using namespace decharge;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;
};

Invocation cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Invocation r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream b;
  b << in.rdbuf();
  return b.str();
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("decharge_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    std::ofstream(dir_ / "gen.json")
        << R"({"num_stations": 25, "slots_per_station": 2, "num_requests": 80, "num_windows": 12, "history_days": 8})";
    ASSERT_EQ(cli({"gen", path("gen.json"), "--seed", "5", "--out", path("s.txt")}).code, 0);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenIsDeterministicPerSeed) {
  const auto a = cli({"gen", path("gen.json"), "--seed", "5"});
  const auto b = cli({"gen", "--config", path("gen.json"), "--seed", "5"});
  const auto c = cli({"gen", path("gen.json"), "--seed", "6"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  EXPECT_EQ(a.out, slurp(dir_ / "s.txt"));
}

TEST_F(CliTest, GenMissingStationsNamesTheKey) {
  std::ofstream(dir_ / "bad.json") << R"({"num_requests": 10})";
  const auto r = cli({"gen", path("bad.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("stations_file"), std::string::npos);
  EXPECT_EQ(r.err.rfind("decharge: error:", 0), 0u);
}

TEST_F(CliTest, RunTwiceGivesIdenticalBytes) {
  const std::vector<std::string> args{"run", path("s.txt"), "--method", "decharge",
                                      "--repetitions", "3", "--iterations", "5"};
  const auto a = cli(args);
  const auto b = cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(count_lines(a.out), 2u);
  EXPECT_EQ(a.out.rfind("day,method,config_hash,seed,", 0), 0u);
}

TEST_F(CliTest, AppendAddsRowsWithoutHeader) {
  for (const char* m : {"greedy", "doc", "sic"}) {
    ASSERT_EQ(cli({"run", path("s.txt"), "--method", m, "--repetitions", "2", "--iterations", "3",
                   "--out", path("r.csv"), "--append"})
                  .code,
              0);
  }
  const auto text = slurp(dir_ / "r.csv");
  EXPECT_EQ(count_lines(text), 4u);
  EXPECT_EQ(text.find("day,"), 0u);
  EXPECT_EQ(text.find("day,", 1), std::string::npos);
}

TEST_F(CliTest, RunWritesLogs) {
  const auto r = cli({"run", path("s.txt"), "--repetitions", "2", "--iterations", "4", "--log-epos",
                      path("trace.csv"), "--log-assignments", path("assign.csv"), "--out",
                      path("r.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto trace = slurp(dir_ / "trace.csv");
  const auto assign = slurp(dir_ / "assign.csv");
  EXPECT_EQ(trace.rfind("window,repetition,iteration,global_cost,num_changes\n", 0), 0u);
  EXPECT_EQ(assign.rfind("window,request_id,station_id,slot,arrival_min,wait_min\n", 0), 0u);
  EXPECT_GT(count_lines(trace), 1u);
  EXPECT_GT(count_lines(assign), 1u);
}

TEST_F(CliTest, FitThenRunWithPredictor) {
  ASSERT_EQ(cli({"fit", path("s.txt"), "--lags", "2", "--out", path("p.txt")}).code, 0);
  const auto r = cli({"run", path("s.txt"), "--predictor", path("p.txt"), "--lags", "2",
                      "--repetitions", "2", "--iterations", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(CliTest, SweepRowsAndJobsIndependence) {
  const std::vector<std::string> base{"sweep",        path("s.txt"), "--axis",       "beta",
                                      "--values",     "0,0.5,1",     "--methods",    "decharge,greedy",
                                      "--repetitions", "2",          "--iterations", "4"};
  auto one = base;
  one.insert(one.end(), {"--jobs", "1"});
  auto four = base;
  four.insert(four.end(), {"--jobs", "4"});
  const auto a = cli(one);
  const auto b = cli(four);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(count_lines(a.out), 7u);
  EXPECT_EQ(a.out.rfind("axis,value,day,method,config_hash,", 0), 0u);
}

TEST_F(CliTest, BadInputsExitNonzero) {
  EXPECT_NE(cli({}).code, 0);
  EXPECT_NE(cli({"frobnicate"}).code, 0);
  EXPECT_NE(cli({"run", path("s.txt"), "--method", "nope"}).code, 0);
  EXPECT_NE(cli({"run", path("s.txt"), "--beta", "1.5"}).code, 0);
  EXPECT_NE(cli({"run", path("s.txt"), "--windows", "7"}).code, 0);
  EXPECT_NE(cli({"run", path("missing.txt")}).code, 0);
  EXPECT_NE(cli({"sweep", path("s.txt"), "--axis", "beta", "--values", ""}).code, 0);
  EXPECT_NE(cli({"sweep", path("s.txt"), "--axis", "colour", "--values", "1"}).code, 0);
  EXPECT_NE(cli({"sweep", path("s.txt"), "--values", "0.5", "--jobs", "0"}).code, 0);
}

TEST_F(CliTest, ExecutableMatchesInProcessRun) {
  const std::string cmd = std::string("\"") + DECHARGE_CLI + "\" run \"" + path("s.txt") +
                          "\" --method greedy --out \"" + path("exe.csv") + "\"";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(slurp(dir_ / "exe.csv"), cli({"run", path("s.txt"), "--method", "greedy"}).out);
  const std::string bad = std::string("\"") + DECHARGE_CLI + "\" run \"" + path("s.txt") +
                          "\" --beta 3 2>/dev/null";
  EXPECT_NE(std::system(bad.c_str()), 0);
}

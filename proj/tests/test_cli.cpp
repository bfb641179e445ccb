// Copyright 2026 The asymscore Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "asymscore/cli.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using asymscore::cli::run;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(ASYMSCORE_DATA_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("asymscore_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, AsymmetryExample) {
  const auto r = call({"asymmetry", "--loss", "crps", "--family", "exponential-scale", "--sigma", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("loss,family,mode,param,lhs,rhs,verdict,margin"), std::string::npos);
  EXPECT_NE(r.out.find("over_penalized"), std::string::npos);
}

TEST(Cli, HedgeExample) {
  const auto r = call({"hedge", "--loss", "log", "--expfam", "exponential-scale", "--shift", "two-point:2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("log,exponential-scale,two-point:2,0.8,"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("inflate"), std::string::npos);
}

TEST(Cli, ScoreExample) {
  const auto r = call({"score", "--loss", "ds", "--dist", "normal:0,1", "--y", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(row.substr(row.rfind(',') + 1), "0");
}

TEST(Cli, JsonOutput) {
  const auto r = call({"--json", "diverge", "--loss", "crps", "--forecast", "exponential:2", "--target",
                       "exponential:1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 1u);
  EXPECT_NEAR(j[0]["divergence"].get<double>(), 1.5 - 4.0 / 3.0, 1e-9);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({}).code, asymscore::cli::kExitUsage);
  EXPECT_EQ(call({"score"}).code, asymscore::cli::kExitUsage);
  EXPECT_EQ(call({"score", "--loss", "nope", "--dist", "normal:0,1", "--y", "0"}).code,
            asymscore::cli::kExitUsage);
  EXPECT_EQ(call({"--threads", "0", "selftest"}).code, asymscore::cli::kExitUsage);
  EXPECT_EQ(call({"asymmetry", "--loss", "crps", "--family", "exponential-scale", "--sigma", "0.5"}).code,
            asymscore::cli::kExitUsage);
}

TEST(Cli, DataErrors) {
  EXPECT_EQ(call({"rank", "--loss", "crps", "--forecasts", "/nonexistent.csv", "--targets", "/nonexistent.csv"})
                .code,
            asymscore::cli::kExitData);
}

TEST(Cli, RejectedGroupsGoToSidecar) {
  const auto dir = scratch("rank");
  const auto r = call({"--out", dir.string(), "rank", "--loss", "crps", "--forecasts", data("forecasts.csv"),
                       "--targets", data("targets.csv")});
  EXPECT_EQ(r.code, asymscore::cli::kExitData) << r.err;
  const std::string ranking = slurp(dir / "ranking.csv");
  EXPECT_NE(ranking.find("calibrated"), std::string::npos);
  const std::string rejected = slurp(dir / "rejected.csv");
  EXPECT_NE(rejected.find("stuck"), std::string::npos) << rejected;
  fs::remove_all(dir);
}

TEST(Cli, DispersionFixture) {
  const auto r = call({"dispersion", "--samples", data("dispersion_samples.csv"), "--divergence", "cramer"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("grid001"), std::string::npos);
  EXPECT_NE(r.out.find("grid003"), std::string::npos);
}

TEST(Cli, DeterministicAcrossRunsAndThreads) {
  const std::vector<std::string> base = {"heatmap", "--loss", "crps", "--dist", "normal:0,1", "--draws", "500",
                                         "--mu-range", "-0.5:0.5:0.25", "--log2-sigma-range", "-1:1:0.5"};
  auto with = [&](const std::string& threads) {
    std::vector<std::string> a = {"--seed", "7", "--threads", threads};
    a.insert(a.end(), base.begin(), base.end());
    return call(a);
  };
  const auto a = with("1");
  const auto b = with("1");
  const auto c = with("2");
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST(Cli, ConfigFileLosesToFlags) {
  const auto dir = scratch("config");
  const fs::path cfg = dir / "run.ini";
  {
    std::ofstream f(cfg);
    f << "[asymmetry]\nloss=\"crps\"\nfamily=\"exponential-scale\"\nsigma=3\n";
  }
  const auto from_file = call({"--config", cfg.string(), "asymmetry"});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_NE(from_file.out.find(",3,"), std::string::npos) << from_file.out;
  const auto flag = call({"--config", cfg.string(), "asymmetry", "--sigma", "2"});
  ASSERT_EQ(flag.code, 0) << flag.err;
  EXPECT_NE(flag.out.find(",2,"), std::string::npos) << flag.out;
  EXPECT_EQ(flag.out.find(",3,"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Cli, SelftestFilter) {
  const auto r = call({"selftest", "--filter", "inv.hedging.reversal"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("PASS inv.hedging.reversal"), std::string::npos);
  EXPECT_EQ(r.out.find("inv.families"), std::string::npos);
}

}  // namespace

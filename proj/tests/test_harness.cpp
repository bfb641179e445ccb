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

#include <cmath>
#include <memory>
#include <sstream>

#include "asymscore/divergence.hpp"
#include "asymscore/harness.hpp"
#include "asymscore/random.hpp"
#include "test_util.hpp"

namespace {

using namespace asymscore;
using harness::ScoredRecord;
using scoring::LossSpec;
using scoring::LossTag;

LossSpec of(LossTag t) { return LossSpec::of(t); }

TEST(Ranks, FractionalWithTies) {
  EXPECT_EQ(harness::fractional_ranks({3.0, 1.0}), (std::vector<double>{2.0, 1.0}));
  EXPECT_EQ(harness::fractional_ranks({2.0, 2.0, 1.0, 5.0}), (std::vector<double>{2.5, 2.5, 1.0, 4.0}));
  EXPECT_TRUE(harness::fractional_ranks({}).empty());
}

TEST(Ranking, StandardizedMeans) {
  std::vector<ScoredRecord> recs = {
      {"a", "X", "2021-01-02", 1, "crps", 1.0, 4.0}, {"b", "X", "2021-01-02", 1, "crps", 2.0, 1.0},
      {"a", "Y", "2021-01-02", 1, "crps", 3.0, 4.0}, {"b", "Y", "2021-01-02", 1, "crps", 3.0, 1.0},
      {"c", "Y", "2021-01-02", 1, "crps", 9.0, 2.0}, {"a", "Z", "2021-01-02", 1, "crps", 1.0, 1.0}};
  const auto t = harness::standardized_ranking(recs);
  EXPECT_EQ(t.degenerate_groups, 1u);
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_EQ(t.rows[0].forecaster, "a");
  EXPECT_NEAR(t.rows[0].mean_std_rank, 0.5 * (0.5 + 0.5), 1e-15);
  EXPECT_NEAR(t.rows[1].mean_std_rank, 0.5 * (1.0 + 0.5), 1e-15);
  EXPECT_NEAR(t.rows[2].mean_std_rank, 1.0, 1e-15);
  EXPECT_NEAR(t.rows[0].mean_std_variance_rank, 1.0, 1e-15);
  EXPECT_EQ(t.rows[0].groups, 2u);

  recs.push_back({"a", "X", "2021-01-02", 1, "crps", 5.0, 1.0});
  EXPECT_ERROR_CODE(harness::standardized_ranking(recs), ErrorCode::kDataError);
}

TEST(Ranking, InvariantUnderPositiveAffineMaps) {
  Rng rng = substream(kDefaultSeed, 71);
  std::vector<ScoredRecord> recs;
  std::vector<ScoredRecord> moved;
  for (int g = 0; g < 10; ++g) {
    const double a = 0.1 + 5.0 * uniform01(rng);
    const double b = 3.0 * uniform01(rng) - 1.5;
    for (int f = 0; f < 4; ++f) {
      ScoredRecord r{"f" + std::to_string(f), "L" + std::to_string(g), "2021-01-02", 1, "log",
                     std::floor(3.0 * uniform01(rng)), uniform01(rng)};
      recs.push_back(r);
      r.loss_value = a * r.loss_value + b;
      moved.push_back(r);
    }
  }
  const auto x = harness::standardized_ranking(recs);
  const auto y = harness::standardized_ranking(moved);
  ASSERT_EQ(x.rows.size(), y.rows.size());
  for (std::size_t i = 0; i < x.rows.size(); ++i) EXPECT_EQ(x.rows[i].mean_std_rank, y.rows[i].mean_std_rank);
}

TEST(Ranking, SharpBeatsFlatUnderCrpsOnly) {
  // A sharp, miscentred forecast against a flat, centred one.
  const families::DistPtr G = std::make_shared<families::Normal>(0.0, 1.0);
  const families::DistPtr sharp = std::make_shared<families::Normal>(0.6, 0.5);
  const families::DistPtr flat = std::make_shared<families::Normal>(0.0, 6.0);
  const auto crps = of(LossTag::kCrps);
  const auto log = of(LossTag::kLog);
  EXPECT_LT(divergence::div(crps, sharp, G).value, divergence::div(crps, flat, G).value);
  EXPECT_GT(divergence::div(log, sharp, G).value, divergence::div(log, flat, G).value);
}

TEST(Dispersion, FlipImprovesInTheExpectedDirection) {
  Rng rng = substream(kDefaultSeed, 72);
  std::vector<double> wide, narrow, g;
  for (int i = 0; i < 300; ++i) {
    wide.push_back(2.0 * standard_normal(rng));
    narrow.push_back(0.5 * standard_normal(rng));
    g.push_back(standard_normal(rng));
  }
  const auto c = harness::dispersion_flip(wide, g, harness::FlipDivergence::kCramer);
  EXPECT_GT(c.a, 1.0);
  EXPECT_LT(c.d_flipped, c.d_original);
  const auto k = harness::dispersion_flip(narrow, g, harness::FlipDivergence::kKl);
  EXPECT_LT(k.a, 1.0);
  EXPECT_LT(k.d_flipped, k.d_original);
  const auto same = harness::dispersion_flip(g, g, harness::FlipDivergence::kCramer);
  EXPECT_DOUBLE_EQ(same.a, 1.0);
  EXPECT_NEAR(same.d_original, 0.0, 1e-8);
  EXPECT_NEAR(same.d_flipped, 0.0, 1e-8);
  EXPECT_ERROR_CODE(harness::parse_flip_divergence("tv"), ErrorCode::kUnknownKind);
}

TEST(Standardizer, ConstantTrendAndRoundTrip) {
  const auto c = harness::RollingStandardizer(5).apply(std::vector<double>(12, 7.0));
  for (double v : c.values) EXPECT_EQ(v, 0.0);
  Rng rng = substream(kDefaultSeed, 73);
  std::vector<double> s;
  for (int i = 0; i < 300; ++i) s.push_back(0.1 * i + standard_normal(rng));
  const auto z = harness::RollingStandardizer(25).apply(s);
  double m = 0.0;
  for (double v : z.values) m += v;
  m /= s.size();
  double var = 0.0;
  for (double v : z.values) var += (v - m) * (v - m);
  var /= s.size();
  EXPECT_GT(var, 0.7);
  EXPECT_LT(var, 1.3);
  for (std::size_t t = 0; t < s.size(); ++t) EXPECT_NEAR(z.inverse(t, z.values[t]), s[t], 1e-12);
  EXPECT_ERROR_CODE(harness::RollingStandardizer(3), ErrorCode::kSeriesTooShort);
  EXPECT_ERROR_CODE(harness::RollingStandardizer(9).apply({1, 2, 3}), ErrorCode::kSeriesTooShort);
}

TEST(Heatmap, ArgminAndCurvature) {
  Rng rng = substream(kDefaultSeed, 74);
  const families::DistPtr N = std::make_shared<families::Normal>(0.0, 1.0);
  std::vector<harness::HeatmapPair> pairs;
  for (int i = 0; i < 4000; ++i) pairs.push_back({N, standard_normal(rng)});
  const std::vector<double> mu = {-1.0, -0.5, 0.0, 0.5, 1.0};
  const std::vector<double> sigma = {0.25, 0.5, 1.0, 2.0, 4.0};
  for (LossTag t : {LossTag::kLog, LossTag::kCrps}) {
    const auto g = harness::heatmap(of(t), pairs, mu, sigma);
    EXPECT_TRUE(g.has_finite_cell);
    EXPECT_EQ(g.argmin_mu(), 0.0);
    EXPECT_EQ(g.argmin_sigma(), 1.0);
    if (t == LossTag::kLog) EXPECT_LT(g.cell(2, 3), g.cell(2, 1));
    else EXPECT_GT(g.cell(2, 3), g.cell(2, 1));
  }
  EXPECT_ERROR_CODE(harness::heatmap(of(LossTag::kCrps), {}, mu, sigma), ErrorCode::kEmptyPairs);
  EXPECT_ERROR_CODE(harness::heatmap(of(LossTag::kCrps), pairs, mu, {1.0, 0.5}), ErrorCode::kDataError);
}

TEST(AsymmetricLaplaceGrid, SymmetryDependsOnP) {
  const std::vector<double> mu = {-0.5, 0.0, 0.5};
  const std::vector<double> sigma = {0.5, 1.0, 2.0};
  const auto sym = harness::asymmetric_laplace_grid(0.5, {of(LossTag::kCrps)}, mu, sigma);
  const auto skew = harness::asymmetric_laplace_grid(0.2, {of(LossTag::kCrps), of(LossTag::kLog)}, mu, sigma);
  ASSERT_EQ(skew.size(), 2u);
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    EXPECT_NEAR(sym[0].cell(0, j), sym[0].cell(2, j), 1e-7);
  }
  // Shifts leave the Cramer distance symmetric even for a skewed target; KL is not.
  EXPECT_NEAR(skew[0].cell(0, 1), skew[0].cell(2, 1), 1e-7);
  EXPECT_GT(std::fabs(skew[1].cell(0, 1) - skew[1].cell(2, 1)), 1e-3);
  EXPECT_EQ(skew[0].argmin_mu(), 0.0);
  EXPECT_EQ(skew[0].argmin_sigma(), 1.0);
  EXPECT_LT(skew[1].cell(1, 2), skew[1].cell(1, 0));
  EXPECT_ERROR_CODE(harness::asymmetric_laplace_grid(1.0, {of(LossTag::kCrps)}, mu, sigma),
                    ErrorCode::kParameterOutOfDomain);
}

TEST(Confounding, SignsFollowTheScaling) {
  const families::DistPtr G = std::make_shared<families::Normal>(0.0, 1.0);
  const families::DistPtr F = std::make_shared<families::Normal>(0.3, 1.2);
  const families::DistPtr H = std::make_shared<families::Normal>(-0.5, 0.8);
  const auto crps = harness::aggregation_confounding(of(LossTag::kCrps), F, H, G, 4.0);
  EXPECT_GT(crps.specializations, 0.0);
  EXPECT_NEAR(crps.missing, 0.5 * 3.0 * divergence::div(of(LossTag::kCrps), F, G).value, 1e-8);
  const auto log = harness::aggregation_confounding(of(LossTag::kLog), F, H, G, 4.0);
  EXPECT_NEAR(log.specializations, 0.0, 1e-10);
  EXPECT_NEAR(log.missing, 0.0, 1e-10);
  EXPECT_ERROR_CODE(harness::aggregation_confounding(of(LossTag::kLog), F, H, G, 0.0),
                    ErrorCode::kParameterOutOfDomain);
}

TEST(Writers, HeatmapCsvShape) {
  harness::HeatmapGrid g;
  g.mu_axis = {0.0, 1.0};
  g.sigma_axis = {1.0};
  g.cells = {2.0, 1.0};
  harness::locate_argmin(g);
  EXPECT_EQ(g.argmin, 1u);
  std::ostringstream os;
  harness::write_heatmap_csv(os, g);
  const std::string s = os.str();
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 3);
}

}  // namespace

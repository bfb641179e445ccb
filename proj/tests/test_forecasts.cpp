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

#include <boost/math/distributions/exponential.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "asymscore/csv.hpp"
#include "asymscore/forecast_io.hpp"
#include "asymscore/forecasts.hpp"
#include "asymscore/random.hpp"
#include "test_util.hpp"

namespace {

using namespace asymscore;
using forecasts::QuantileForecast;

QuantileForecast make_q(std::vector<double> levels, std::vector<double> values) {
  QuantileForecast q;
  q.levels = std::move(levels);
  q.values = std::move(values);
  return q;
}

TEST(Validation, AcceptsAndRejects) {
  EXPECT_TRUE(forecasts::validate_quantiles(make_q({0.1, 0.25, 0.5, 0.75}, {0, 1, 2, 3})).accepted);
  const auto atom = forecasts::validate_quantiles(make_q({0.1, 0.25, 0.5, 0.75}, {1, 2, 2, 3}));
  EXPECT_FALSE(atom.accepted);
  EXPECT_EQ(atom.code, ErrorCode::kAtom);
  const auto cross = forecasts::validate_quantiles(make_q({0.1, 0.25, 0.5, 0.75}, {1, 3, 2, 4}));
  EXPECT_FALSE(cross.accepted);
  EXPECT_EQ(cross.code, ErrorCode::kCrossing);
  EXPECT_EQ(forecasts::validate_quantiles(make_q({0.25, 0.5, 0.75}, {1, 2, 3})).code,
            ErrorCode::kTooFewLevels);
  EXPECT_ERROR_CODE(forecasts::require_valid(make_q({0.1, 0.25, 0.5, 0.75}, {1, 2, 2, 3})),
                    ErrorCode::kAtom);
}

TEST(TailExtended, ExponentialUpperRate) {
  const boost::math::exponential_distribution<> e(1.0);
  QuantileForecast q;
  q.levels = {0.25, 0.5, 0.75, 0.9};
  for (double t : q.levels) q.values.push_back(boost::math::quantile(e, t));
  const auto d = forecasts::quantile_to_distribution(q);
  EXPECT_NEAR(d->upper_rate(), 1.0, 1e-9);
  for (std::size_t i = 0; i < q.levels.size(); ++i) {
    EXPECT_NEAR(d->cdf(q.values[i]), q.levels[i], 1e-9);
    EXPECT_NEAR(d->quantile(q.levels[i]), q.values[i], 1e-9);
  }
}

TEST(TailExtended, ClosedCrpsMatchesIntegral) {
  const auto d = forecasts::quantile_to_distribution(
      make_q({0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95}, {-2.0, -1.1, -0.5, 0.1, 0.6, 1.5, 2.4}));
  for (double y : {-3.0, -0.7, 0.1, 0.3, 5.0}) {
    auto f = [&](double x) {
      const double c = d->cdf(x) - (x >= y ? 1.0 : 0.0);
      return c * c;
    };
    std::vector<double> pts = {-60.0, y};
    for (double v : d->knots()) pts.push_back(v);
    pts.push_back(60.0);
    std::sort(pts.begin(), pts.end());
    double oracle = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      oracle += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, pts[i], pts[i + 1], 15, 1e-14);
    }
    EXPECT_NEAR(d->crps(y), oracle, 1e-9) << y;
  }
}

TEST(TailExtended, ReconstructedNormalCrps) {
  std::vector<double> levels = {0.01, 0.025};
  for (int k = 1; k <= 19; ++k) levels.push_back(0.05 * k);
  levels.push_back(0.975);
  levels.push_back(0.99);
  const boost::math::normal n;
  QuantileForecast q;
  q.levels = levels;
  for (double t : levels) q.values.push_back(boost::math::quantile(n, t));
  const auto d = forecasts::quantile_to_distribution(q);
  Rng rng = substream(kDefaultSeed, 3);
  double recon = 0.0;
  double exact = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double y = standard_normal(rng);
    recon += d->crps(y);
    // Closed form for the standard normal.
    exact += y * (2.0 * boost::math::cdf(n, y) - 1.0) + 2.0 * boost::math::pdf(n, y) - 1.0 / std::sqrt(M_PI);
  }
  EXPECT_NEAR(recon / 10000.0, exact / 10000.0, 0.01);
}

TEST(Kde, ScottBandwidthAndMass) {
  std::vector<double> x(100);
  for (int i = 0; i < 100; ++i) x[i] = (i % 2 == 0 ? -2.0 : 2.0);
  const auto k = forecasts::kde_fit(x);
  EXPECT_NEAR(k->bandwidth(), 2.0 * std::pow(100.0, -0.2), 1e-12);
  EXPECT_NEAR(k->bandwidth(), 0.7962, 1e-4);
  Rng rng = substream(kDefaultSeed, 4);
  std::vector<double> s(500);
  for (auto& v : s) v = standard_normal(rng);
  const auto d = forecasts::kde_fit(s);
  const double mass = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [&](double t) { return d->pdf(t); }, -30.0, 30.0, 20, 1e-13);
  EXPECT_NEAR(mass, 1.0, 1e-8);
  EXPECT_ERROR_CODE(forecasts::kde_fit({1, 2, 3}), ErrorCode::kTooFewSamples);
  EXPECT_ERROR_CODE(forecasts::kde_fit(std::vector<double>(20, 1.0)), ErrorCode::kZeroVariance);
}

TEST(Kde, VarianceOfLargeSample) {
  Rng rng = substream(kDefaultSeed, 5);
  std::vector<double> s(100000);
  for (auto& v : s) v = standard_normal(rng);
  const auto d = forecasts::kde_fit(s);
  EXPECT_GT(d->variance(), 0.9);
  EXPECT_LT(d->variance(), 1.15);
}

TEST(AffineTo, Examples) {
  const auto n = forecasts::affine_to(families::parse_distribution("normal:3,4"), 0.0, 1.0);
  for (double x : {-2.0, 0.0, 0.7}) {
    EXPECT_NEAR(n->pdf(x), boost::math::pdf(boost::math::normal(), x), 1e-14);
  }
  const auto e = forecasts::affine_to(forecasts::Ensemble::univariate({0.0, 2.0}), 0.0, 1.0);
  EXPECT_DOUBLE_EQ(e.member(0)[0], -1.0);
  EXPECT_DOUBLE_EQ(e.member(1)[0], 1.0);
  const auto t = forecasts::quantile_to_distribution(
      make_q({0.1, 0.25, 0.5, 0.75, 0.9}, {1.0, 2.0, 2.5, 3.5, 6.0}));
  const auto a = forecasts::affine_to(t, -1.0, 0.5);
  EXPECT_NEAR(a->mean(), -1.0, 1e-8);
  EXPECT_NEAR(a->sd(), 0.5, 1e-8);
  EXPECT_ERROR_CODE(forecasts::affine_to(families::parse_distribution("cauchy:0,1"), 0.0, 1.0),
                    ErrorCode::kInfiniteMoments);
}

TEST(Csv, ParsesQuotedFieldsAndRejectsRaggedRows) {
  std::istringstream ok("\xEF\xBB\xBF" "a,b\r\n\"x,1\",2\n\n3,\"q\"\"\"\n");
  const auto t = csv::read(ok);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][0], "x,1");
  EXPECT_EQ(t.rows[1][1], "q\"");
  std::istringstream bad("a,b\n1,2,3\n");
  EXPECT_ERROR_CODE(csv::read(bad), ErrorCode::kDataError);
  EXPECT_ERROR_CODE(csv::parse_number("1.5x", "v"), ErrorCode::kDataError);
}

TEST(ForecastIo, GroupsValidatesAndRejects) {
  std::istringstream in(
      "forecaster,location,date,horizon,level,value\n"
      "a,US,2021-01-02,1,0.5,2\na,US,2021-01-02,1,0.1,1\na,US,2021-01-02,1,0.25,1.5\n"
      "a,US,2021-01-02,1,0.75,3\n"
      "b,US,2021-02-30,1,0.5,2\n");
  const auto load = forecast_io::load_forecasts(csv::read(in));
  ASSERT_EQ(load.accepted.size(), 1u);
  EXPECT_EQ(load.accepted[0].levels.front(), 0.1);
  ASSERT_EQ(load.rejected.size(), 1u);
  EXPECT_EQ(load.rejected[0].reason, "DataError");
  EXPECT_TRUE(forecast_io::is_iso_date("2024-02-29"));
  EXPECT_FALSE(forecast_io::is_iso_date("2023-02-29"));
  std::istringstream tin("location,date,horizon,observed\nUS,2021-01-02,1,4.5\nUS,2021-01-02,1,5\n");
  EXPECT_ERROR_CODE(forecast_io::load_targets(csv::read(tin)), ErrorCode::kDataError);
}

}  // namespace

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

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "asymscore/forecasts.hpp"
#include "asymscore/random.hpp"
#include "asymscore/scoring.hpp"
#include "test_util.hpp"

namespace {

using namespace asymscore;
using scoring::LossSpec;
using scoring::LossTag;
using GK = boost::math::quadrature::gauss_kronrod<double, 61>;

LossSpec of(LossTag t) { return LossSpec::of(t); }

// int (F(x) - 1{x >= y})^2 dx from the cdf alone.
double crps_oracle(const families::Distribution& F, double y) {
  const double lo = std::min(F.quantile(1e-12), y) - 1.0;
  const double hi = std::max(F.quantile(1.0 - 1e-12), y) + 1.0;
  auto left = [&](double x) { return F.cdf(x) * F.cdf(x); };
  auto right = [&](double x) { return F.sf(x) * F.sf(x); };
  return GK::integrate(left, lo, y, 20, 1e-14) + GK::integrate(right, y, hi, 20, 1e-14);
}

TEST(Scoring, NormalExamples) {
  const auto n = families::parse_distribution("normal:0,1");
  const double phi0 = 1.0 / std::sqrt(2.0 * M_PI);
  EXPECT_NEAR(scoring::score(of(LossTag::kLog), n, 0.0), 0.5 * std::log(2.0 * M_PI), 1e-14);
  EXPECT_NEAR(scoring::score(of(LossTag::kCrps), n, 0.0), 2.0 * phi0 - 1.0 / std::sqrt(M_PI), 1e-14);
  EXPECT_NEAR(scoring::score(of(LossTag::kCrps), n, 0.0), 0.23370, 1e-5);
  EXPECT_NEAR(scoring::score(of(LossTag::kDs), n, 0.0), 0.0, 1e-15);
  const double quad = -2.0 * phi0 + 1.0 / (2.0 * std::sqrt(M_PI));
  EXPECT_NEAR(scoring::score(of(LossTag::kQuadratic), n, 0.0), quad, 1e-14);
  EXPECT_NEAR(scoring::score(of(LossTag::kQuadratic), n, 0.0), -0.51579, 1e-5);
  const double norm = std::sqrt(1.0 / (2.0 * std::sqrt(M_PI)));
  EXPECT_NEAR(scoring::score(of(LossTag::kSpherical), n, 0.0), -phi0 / norm, 1e-14);
}

TEST(Scoring, CrpsAgreesWithCdfIntegral) {
  for (const char* s : {"normal:0.3,1.4", "exponential:1", "laplace:0,1.2", "gamma:2.5,1",
                        "weibull:1.6,2", "uniform:-1,3", "log-normal:0,0.5", "beta:2,3",
                        "asymmetric-laplace:0,1,0.3"}) {
    const auto F = families::parse_distribution(s);
    for (double p : {0.05, 0.5, 0.9}) {
      const double y = F->quantile(p);
      EXPECT_NEAR(scoring::score(of(LossTag::kCrps), F, y), crps_oracle(*F, y), 1e-8) << s;
      const auto [a, b] = scoring::crps_both_forms(F, y);
      EXPECT_NEAR(a, b, 1e-6) << s;
    }
  }
}

TEST(Scoring, CrpsBothFormsExamples) {
  const auto e = families::parse_distribution("exponential:1");
  const auto [a, b] = scoring::crps_both_forms(e, 1.0);
  EXPECT_NEAR(a, b, 1e-6);
  EXPECT_NEAR(a, 1.0 - 1.0 + 2.0 * std::exp(-1.0) - 0.5, 1e-9);
  const auto narrow = families::parse_distribution("uniform:-1e-6,1e-6");
  const auto [c, d] = scoring::crps_both_forms(narrow, 0.0);
  EXPECT_NEAR(c, 0.0, 1e-6);
  EXPECT_NEAR(d, 0.0, 1e-6);
  const auto [g, h] = scoring::crps_both_forms(families::parse_distribution("normal:0,1"), 0.0);
  EXPECT_NEAR(g, 0.23370, 1e-5);
  EXPECT_NEAR(h, 0.23370, 1e-5);
}

TEST(Scoring, ThresholdWeighted) {
  const auto n = families::parse_distribution("normal:0,1");
  const auto e = families::parse_distribution("exponential:1");
  EXPECT_NEAR(scoring::twcrps_score(n, 0.0, scoring::WeightFunction()),
              scoring::score(of(LossTag::kCrps), n, 0.0), 1e-12);
  EXPECT_NEAR(scoring::twcrps_score(e, 1.0, scoring::WeightFunction::power(0.0)),
              scoring::score(of(LossTag::kCrps), e, 1.0), 1e-12);
  const auto w1 = scoring::WeightFunction::power(1.0);
  const auto [a, b] = scoring::twcrps_both_forms(e, 0.0, w1);
  EXPECT_GT(a, 0.0);
  EXPECT_NEAR(a, b, 1e-6);
  // Oracle: int_0^inf x (1 - F(x))^2 dx for y = 0 is 1/4.
  EXPECT_NEAR(a, 0.25, 1e-9);
  const auto tab = scoring::WeightFunction::tabulated([](double x) { return x >= 0 ? 1.0 : 0.0; },
                                                      [](double x) { return std::max(x, 0.0); });
  EXPECT_NO_THROW(tab.check_against(*e));
  EXPECT_ERROR_CODE(scoring::twcrps_score(n, 0.0, scoring::WeightFunction::power(0.5)),
                    ErrorCode::kNegativeSupportPowerWeight);
}

TEST(Scoring, EnsembleEnergy) {
  const auto e = forecasts::Ensemble::univariate({-1.0, 1.0});
  EXPECT_NEAR(scoring::score(LossSpec::energy(1.0), e, 0.0), 0.5, 1e-15);
  EXPECT_NEAR(scoring::score(LossSpec::energy(1.3), forecasts::Ensemble::univariate({2.5}), 2.5), 0.0, 1e-15);
  // d = beta = 1 matches the crps of the empirical cdf.
  Rng rng = substream(kDefaultSeed, 9);
  std::vector<double> m(37);
  for (auto& v : m) v = standard_normal(rng);
  const auto ens = forecasts::Ensemble::univariate(m);
  for (double y : {-0.4, 0.0, 2.0}) {
    double brute = 0.0;
    std::vector<double> s = m;
    std::sort(s.begin(), s.end());
    const double lo = std::min(s.front(), y) - 1.0;
    const double hi = std::max(s.back(), y) + 1.0;
    const int steps = 400000;
    const double h = (hi - lo) / steps;
    for (int i = 0; i < steps; ++i) {
      const double x = lo + (i + 0.5) * h;
      const double Fx = static_cast<double>(std::upper_bound(s.begin(), s.end(), x) - s.begin()) / s.size();
      const double c = Fx - (x >= y ? 1.0 : 0.0);
      brute += c * c * h;
    }
    EXPECT_NEAR(scoring::score(of(LossTag::kCrps), ens, y), brute, 1e-4);
    EXPECT_NEAR(scoring::score(LossSpec::energy(1.0), ens, y), scoring::score(of(LossTag::kCrps), ens, y), 1e-9);
  }
  // Two-dimensional members against the brute-force pair average.
  const forecasts::Ensemble e2({0.0, 0.0, 3.0, 4.0}, 2);
  const double want = 0.5 * (std::hypot(1.0, 1.0) + std::hypot(2.0, 3.0)) - 0.5 * (2.0 * 5.0 / 4.0);
  EXPECT_NEAR(scoring::score(LossSpec::energy(1.0), e2, std::vector<double>{1.0, 1.0}), want, 1e-12);
  EXPECT_ERROR_CODE(scoring::score(LossSpec::energy(1.0), e2, std::vector<double>{1.0}),
                    ErrorCode::kDimensionMismatch);
}

TEST(Scoring, ImproperWithoutPenalty) {
  const auto F = families::parse_distribution("normal:0,0.1");
  const auto G = families::parse_distribution("normal:0,1");
  const boost::math::normal g;
  auto partial = [&](const families::Distribution& D) {
    return GK::integrate([&](double y) { return -2.0 * D.pdf(y) * boost::math::pdf(g, y); }, -12.0, 12.0, 20, 1e-14);
  };
  EXPECT_LT(partial(*F), partial(*G));
  auto full = [&](const families::DistPtr& D) {
    return GK::integrate(
        [&](double y) { return scoring::score(of(LossTag::kQuadratic), D, y) * boost::math::pdf(g, y); }, -12.0,
        12.0, 20, 1e-14);
  };
  EXPECT_LT(full(G), full(F));
}

TEST(Scoring, DsDependsOnTwoMoments) {
  const auto a = families::parse_distribution("normal:1,2");
  const auto b = std::make_shared<families::Laplace>(1.0, std::sqrt(2.0));
  for (double y : {-3.0, 0.0, 4.0}) {
    EXPECT_NEAR(scoring::score(of(LossTag::kDs), a, y), scoring::score(of(LossTag::kDs), b, y), 1e-13);
  }
}

TEST(Scoring, CrpsHomogeneity) {
  const auto F = families::parse_distribution("gamma:2,1");
  for (double s : {0.3, 2.0, 7.5}) {
    for (double y : {0.2, 1.0, 4.0}) {
      EXPECT_NEAR(scoring::score(of(LossTag::kCrps), F->affine(0.0, s), s * y),
                  s * scoring::score(of(LossTag::kCrps), F, y), 1e-9);
    }
  }
}

TEST(Scoring, SpecParsingAndErrors) {
  EXPECT_EQ(scoring::parse_loss("energy:1.5").beta, 1.5);
  EXPECT_EQ(scoring::parse_loss("twcrps:2").weight.alpha(), 2.0);
  EXPECT_EQ(scoring::parse_loss("CRPS").tag, LossTag::kCrps);
  EXPECT_ERROR_CODE(scoring::parse_loss("hinge"), ErrorCode::kUnknownKind);
  EXPECT_ERROR_CODE(LossSpec::energy(2.0), ErrorCode::kParameterOutOfDomain);
  EXPECT_ERROR_CODE(scoring::score(of(LossTag::kCrps), families::parse_distribution("cauchy:0,1"), 0.0),
                    ErrorCode::kMomentRequired);
  EXPECT_TRUE(std::isinf(scoring::score(of(LossTag::kLog), families::parse_distribution("uniform:0,1"), 2.0)));
}

}  // namespace

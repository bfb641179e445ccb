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

#include <boost/math/special_functions/lambert_w.hpp>
#include <boost/math/tools/roots.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "asymscore/asymmetry.hpp"
#include "asymscore/lambert_w.hpp"
#include "asymscore/random.hpp"
#include "test_util.hpp"

namespace {

using namespace asymscore;
using asymmetry::Comparison;
using scoring::LossSpec;
using scoring::LossTag;

LossSpec of(LossTag t) { return LossSpec::of(t); }

TEST(Scaling, Exponents) {
  EXPECT_EQ(asymmetry::scaling_exponent(of(LossTag::kCrps)), 1.0);
  EXPECT_EQ(asymmetry::scaling_exponent(LossSpec::energy(1.5)), 1.5);
  EXPECT_EQ(asymmetry::scaling_exponent(of(LossTag::kQuadratic)), -1.0);
  EXPECT_EQ(asymmetry::scaling_exponent(of(LossTag::kLog)), 0.0);
  EXPECT_EQ(asymmetry::scaling_exponent(of(LossTag::kDs)), 0.0);
  EXPECT_EQ(asymmetry::scaling_exponent(LossSpec::twcrps(scoring::WeightFunction::power(-1.0))), 0.0);
  EXPECT_ERROR_CODE(asymmetry::scaling_exponent(of(LossTag::kSpherical)), ErrorCode::kUnsupported);
}

TEST(Scaling, RegressionRecoversExponent) {
  const auto F = families::parse_distribution("laplace:0.2,1.5");
  const auto G = families::parse_distribution("normal:0,1");
  const auto fit = asymmetry::fit_scaling_exponent(LossSpec::energy(0.8), F, G);
  EXPECT_NEAR(fit.slope, 0.8, 1e-6);
}

TEST(ScaleVerdict, Examples) {
  const auto e = families::parse_scale_family("exponential-scale");
  const auto v = asymmetry::scale_verdict(of(LossTag::kCrps), e, 2.0);
  EXPECT_EQ(v.comparison, Comparison::kOverPenalized);
  EXPECT_NEAR(v.d_lhs, 1.0 / 6.0, 1e-10);
  EXPECT_NEAR(v.d_rhs, 0.5 * 1.5 - 1.0 / 1.5, 1e-10);
  EXPECT_EQ(asymmetry::scale_verdict(of(LossTag::kSpherical), families::parse_scale_family("normal-scale"), 3.0)
                .comparison,
            Comparison::kSymmetric);
  EXPECT_EQ(asymmetry::scale_verdict(of(LossTag::kQuadratic), families::parse_scale_family("weibull-scale:2"), 2.0)
                .comparison,
            Comparison::kUnderPenalized);
  EXPECT_ERROR_CODE(asymmetry::scale_verdict(of(LossTag::kCrps), e, 0.5), ErrorCode::kParameterOutOfDomain);
}

TEST(LocationVerdict, Examples) {
  const auto ex = families::parse_location_family("exponential-location");
  EXPECT_EQ(asymmetry::location_verdict(of(LossTag::kCrps), ex, 1.0).comparison, Comparison::kSymmetric);
  const auto n = families::parse_location_family("normal-location");
  EXPECT_EQ(asymmetry::location_verdict(of(LossTag::kLog), n, 2.0).comparison, Comparison::kSymmetric);
  const auto al = families::parse_location_family("asymmetric-laplace-location:0,1,0.2");
  const auto v = asymmetry::location_verdict(of(LossTag::kLog), al, 1.0);
  EXPECT_NE(v.comparison, Comparison::kSymmetric);
  EXPECT_TRUE(v.flagged);
  EXPECT_GT(v.margin, 1e-3);
}

TEST(ExpFamVerdict, Examples) {
  const auto e = families::expfam_descriptor("exponential-scale");
  const auto v = asymmetry::expfam_verdict(e, 1.0, 2.0);
  EXPECT_EQ(v.verdict.comparison, Comparison::kOverPenalized);
  EXPECT_EQ(v.probe, asymmetry::Monotonicity::kIncreasing);
  const auto p = asymmetry::expfam_verdict(families::expfam_descriptor("poisson-rate"), 0.0, 1.0);
  EXPECT_EQ(p.verdict.comparison, Comparison::kOverPenalized);
  EXPECT_NEAR(p.verdict.d_lhs - p.verdict.d_rhs, (std::exp(1.0) - 2.0) - std::exp(-1.0), 1e-12);
  const auto g = asymmetry::expfam_verdict(families::expfam_descriptor("gamma-shape"), 1.0, 2.0);
  EXPECT_EQ(g.verdict.comparison, Comparison::kOverPenalized);
}

TEST(Monotonicity, Classes) {
  using asymmetry::Monotonicity;
  EXPECT_EQ(asymmetry::classify_monotonicity({1, 2, 3}), Monotonicity::kIncreasing);
  EXPECT_EQ(asymmetry::classify_monotonicity({3, 2, 1}), Monotonicity::kDecreasing);
  EXPECT_EQ(asymmetry::classify_monotonicity({1, 1, 1}), Monotonicity::kConstant);
  EXPECT_EQ(asymmetry::classify_monotonicity({1, 3, 2}), Monotonicity::kMixed);
}

TEST(LambertW, AgreesWithBoost) {
  using numerics::LambertBranch;
  EXPECT_EQ(numerics::lambert_w(LambertBranch::kPrincipal, 0.0), 0.0);
  EXPECT_NEAR(numerics::lambert_w(LambertBranch::kPrincipal, std::exp(1.0)), 1.0, 1e-15);
  EXPECT_NEAR(numerics::lambert_w(LambertBranch::kPrincipal, -2.0 * std::exp(-2.0)), -0.40637573995996, 1e-12);
  Rng rng = substream(kDefaultSeed, 31);
  for (int i = 0; i < 500; ++i) {
    const double x0 = -std::exp(-1.0) + 50.0 * uniform01(rng);
    EXPECT_NEAR(numerics::lambert_w(LambertBranch::kPrincipal, x0), boost::math::lambert_w0(x0),
                1e-13 * std::max(1.0, std::fabs(boost::math::lambert_w0(x0))));
    const double x1 = -std::exp(-1.0) * (1e-6 + (1.0 - 2e-6) * uniform01(rng));
    EXPECT_NEAR(numerics::lambert_w(LambertBranch::kMinusOne, x1), boost::math::lambert_wm1(x1),
                1e-12 * std::fabs(boost::math::lambert_wm1(x1)));
  }
  EXPECT_ERROR_CODE(numerics::lambert_w(LambertBranch::kMinusOne, 0.5), ErrorCode::kParameterOutOfDomain);
}

TEST(LossDiffRoot, Examples) {
  const auto e = families::expfam_descriptor("exponential-scale");
  const auto [a, b] = asymmetry::loss_diff_root(e, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(a, 1.0);
  EXPECT_NEAR(b, 1.0, 1e-9);
  const auto [c, d] = asymmetry::loss_diff_root(e, 1.0, 2.0);
  EXPECT_DOUBLE_EQ(c, 2.0);
  // Bisection oracle on log(x / 2) = x - 2 below 1.
  const auto r = boost::math::tools::bisect([](double x) { return std::log(x / 2.0) - (x - 2.0); }, 1e-3, 1.0,
                                            boost::math::tools::eps_tolerance<double>(50));
  EXPECT_NEAR(d, 0.5 * (r.first + r.second), 1e-12);
  EXPECT_NEAR(d, 0.40637, 1e-5);
  EXPECT_LT(std::fabs(e.bregman(d, 1.0) - e.bregman(2.0, 1.0)), 1e-9);
  EXPECT_ERROR_CODE(asymmetry::loss_diff_root(families::expfam_descriptor("gamma-shape"), 1.0, 2.0),
                    ErrorCode::kNotLogAffinePartition);
  EXPECT_ERROR_CODE(asymmetry::loss_diff_root(families::expfam_descriptor("poisson-rate"), 1.0, 2.0),
                    ErrorCode::kParameterOutOfDomain);
}

TEST(Trichotomy, Examples) {
  const auto s = families::parse_scale_family("exponential-scale");
  const families::LocationFamily loc(families::parse_distribution("exponential:1")->affine(2.0, 1.0));
  using asymmetry::TrichotomyMode;
  EXPECT_EQ(asymmetry::power_crps_trichotomy(-1.0, TrichotomyMode::kScale, &s, nullptr, 2.0).comparison,
            Comparison::kSymmetric);
  EXPECT_EQ(asymmetry::power_crps_trichotomy(0.0, TrichotomyMode::kLocation, nullptr, &loc, 1.0).comparison,
            Comparison::kSymmetric);
  EXPECT_EQ(asymmetry::power_crps_trichotomy(1.0, TrichotomyMode::kLocation, nullptr, &loc, 1.0).comparison,
            Comparison::kOverPenalized);
  EXPECT_EQ(asymmetry::power_crps_trichotomy(1.0, TrichotomyMode::kLocation, nullptr, &loc, -1.0).comparison,
            Comparison::kUnderPenalized);
  const auto bare = families::parse_location_family("exponential-location");
  EXPECT_ERROR_CODE(asymmetry::power_crps_trichotomy(1.0, TrichotomyMode::kLocation, nullptr, &bare, 1.0),
                    ErrorCode::kNegativeSupportPowerWeight);
}

TEST(Classify, Tolerance) {
  EXPECT_EQ(asymmetry::classify(1.0, 1.0 + 1e-9).comparison, Comparison::kSymmetric);
  EXPECT_EQ(asymmetry::classify(2.0, 1.0).comparison, Comparison::kOverPenalized);
  EXPECT_EQ(asymmetry::classify(1.0, 2.0).comparison, Comparison::kUnderPenalized);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(asymmetry::classify(inf, inf).comparison, Comparison::kSymmetric);
}

}  // namespace

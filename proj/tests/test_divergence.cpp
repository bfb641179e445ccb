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

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "asymscore/divergence.hpp"
#include "asymscore/random.hpp"
#include "test_util.hpp"

namespace {

using namespace asymscore;
using families::DistPtr;
using scoring::LossSpec;
using scoring::LossTag;
using GK = boost::math::quadrature::gauss_kronrod<double, 61>;

LossSpec of(LossTag t) { return LossSpec::of(t); }
DistPtr dist(const char* s) { return families::parse_distribution(s); }

std::vector<LossSpec> all_specs() {
  return {of(LossTag::kLog),  of(LossTag::kQuadratic), of(LossTag::kSpherical), of(LossTag::kCrps),
          LossSpec::twcrps(scoring::WeightFunction::power(2.0)), LossSpec::energy(1.5),
          of(LossTag::kDs)};
}

TEST(ExpectedLoss, LogNormalClosedForm) {
  const auto G = dist("normal:0,1");
  for (double s : {0.5, 2.0}) {
    const auto F = std::make_shared<families::Normal>(0.0, s);
    const double want = std::log(s) + 1.0 / (2.0 * s * s) + 0.5 * std::log(2.0 * M_PI);
    EXPECT_NEAR(divergence::expected_loss(of(LossTag::kLog), F, G), want, 1e-12);
    EXPECT_NEAR(divergence::expected_loss_quadrature(of(LossTag::kLog), F, G), want, 1e-8);
  }
  EXPECT_NEAR(divergence::expected_loss(of(LossTag::kLog), dist("normal:0,2"), G), 1.7371, 1e-4);
}

TEST(ExpectedLoss, CrpsSelfLossOfExponential) {
  const auto G = dist("exponential:1");
  EXPECT_NEAR(divergence::expected_loss(of(LossTag::kCrps), G, G), 0.5, 1e-12);
  // E|Y - Y'| by a double integral oracle.
  const double e = GK::integrate(
      [](double x) {
        auto g = [x](double y) { return std::fabs(x - y) * std::exp(-x - y); };
        return GK::integrate(g, 0.0, x, 15, 1e-13) + GK::integrate(g, x, 60.0, 15, 1e-13);
      },
      0.0, 60.0, 15, 1e-13);
  EXPECT_NEAR(e, 1.0, 1e-8);
  EXPECT_NEAR(divergence::expected_loss(of(LossTag::kCrps), G, G), 0.5 * e, 1e-8);
}

TEST(ExpectedLoss, ProprietyOnRandomAlternatives) {
  const auto G = dist("gamma:2,1");
  Rng rng = substream(kDefaultSeed, 21);
  for (const auto& spec : all_specs()) {
    const double self = divergence::expected_loss(spec, G, G);
    for (int k = 0; k < 50; ++k) {
      const double a = 1.0 + 3.0 * uniform01(rng);
      const double s = 0.3 + 1.5 * uniform01(rng);
      const auto F = std::make_shared<families::Gamma>(a, s);
      EXPECT_LE(self, divergence::expected_loss(spec, F, G) + 1e-9) << spec.describe();
    }
  }
}

TEST(Div, ExponentialExamples) {
  const auto G = dist("exponential:1");
  const auto F = dist("exponential:2");
  auto crps = [](double s) { return (1.0 + s) / 2.0 - 2.0 * s / (1.0 + s); };
  auto quad = [](double s) { return (s - 1.0) * (s - 1.0) / (2.0 * s * (s + 1.0)); };
  EXPECT_NEAR(divergence::div(of(LossTag::kCrps), F, G).value, 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(divergence::div(of(LossTag::kQuadratic), F, G).value, 1.0 / 12.0, 1e-12);
  for (double s : {0.3, 0.5, 1.7, 4.0}) {
    const auto Fs = std::make_shared<families::Exponential>(s);
    EXPECT_NEAR(divergence::div(of(LossTag::kCrps), Fs, G).value, crps(s), 1e-12);
    EXPECT_NEAR(divergence::div(of(LossTag::kQuadratic), Fs, G).value, quad(s), 1e-12);
  }
  EXPECT_NEAR(divergence::div(of(LossTag::kLog), dist("exponential:0.5"), G).value, 1.0 - std::log(2.0), 1e-12);
}

TEST(Div, ZeroAtTarget) {
  for (const auto& spec : all_specs()) {
    for (const char* s : {"exponential:1.3", "weibull:1.5,1", "gamma:3,0.7"}) {
      const auto G = dist(s);
      EXPECT_NEAR(divergence::div(spec, G, G).value, 0.0, 1e-8) << spec.describe() << " " << s;
    }
  }
}

TEST(Div, ClosedQuadratureAndMonteCarloAgree) {
  const std::vector<std::pair<DistPtr, DistPtr>> pairs = {
      {dist("normal:0.2,1.3"), dist("normal:-0.1,0.8")},
      {dist("exponential:0.7"), dist("exponential:1.4")},
      {dist("weibull:1.5,1"), dist("gamma:2,0.6")}};
  for (const auto& spec : all_specs()) {
    for (const auto& [F, G] : pairs) {
      const double closed = divergence::expected_loss(spec, F, G);
      const double quad = divergence::expected_loss_quadrature(spec, F, G);
      EXPECT_NEAR(closed, quad, 1e-6 * std::max(1.0, std::fabs(closed))) << spec.describe();
      divergence::MonteCarloOptions mc;
      mc.draws = 200000;
      const auto m = divergence::expected_loss_monte_carlo(spec, F, G, mc);
      EXPECT_EQ(m.method, divergence::Method::kMonteCarlo);
      EXPECT_GT(m.error_estimate, 0.0);
      EXPECT_NEAR(m.value, closed, 4.0 * m.error_estimate + 1e-6) << spec.describe();
      const double sub = divergence::div_by_subtraction(spec, F, G);
      EXPECT_NEAR(sub, divergence::div(spec, F, G).value, 1e-6 * std::max(1.0, std::fabs(sub)));
    }
  }
}

TEST(Div, SymmetricFamiliesOfDivergences) {
  const auto F = dist("gamma:2.5,0.8");
  const auto G = dist("weibull:1.4,1.7");
  for (const auto& spec : {of(LossTag::kCrps), of(LossTag::kQuadratic), LossSpec::energy(0.7),
                           LossSpec::twcrps(scoring::WeightFunction::power(1.0))}) {
    EXPECT_NEAR(divergence::div(spec, F, G).value, divergence::div(spec, G, F).value, 1e-8) << spec.describe();
  }
  for (const auto& spec : {of(LossTag::kLog), of(LossTag::kSpherical), of(LossTag::kDs)}) {
    EXPECT_GT(std::fabs(divergence::div(spec, F, G).value - divergence::div(spec, G, F).value), 1e-3)
        << spec.describe();
  }
}

TEST(Div, CauchyLogLossIsSymmetric) {
  const auto G = dist("cauchy:0,1");
  for (double s : {2.0, 5.0}) {
    const double up = divergence::div(of(LossTag::kLog), std::make_shared<families::Cauchy>(0.0, s), G).value;
    const double down = divergence::div(of(LossTag::kLog), std::make_shared<families::Cauchy>(0.0, 1.0 / s), G).value;
    // KL between Cauchy laws: log((s + 1)^2 / (4 s)).
    EXPECT_NEAR(up, std::log((s + 1.0) * (s + 1.0) / (4.0 * s)), 1e-8);
    EXPECT_NEAR(up, down, 1e-6);
  }
}

TEST(Div, Errors) {
  EXPECT_ERROR_CODE(divergence::div(of(LossTag::kCrps), dist("cauchy:0,1"), dist("normal:0,1")),
                    ErrorCode::kMomentRequired);
  EXPECT_ERROR_CODE(divergence::div(LossSpec::twcrps(scoring::WeightFunction::power(-1.5)),
                                    dist("normal:0,1"), dist("normal:0,1")),
                    ErrorCode::kNegativeSupportPowerWeight);
}

}  // namespace

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

#include "asymscore/divergence.hpp"
#include "asymscore/hedging.hpp"
#include "asymscore/random.hpp"
#include "test_util.hpp"

namespace {

using namespace asymscore;
using hedging::Direction;
using hedging::ShiftLaw;
using scoring::LossSpec;
using scoring::LossTag;

LossSpec of(LossTag t) { return LossSpec::of(t); }

// Mean crps of Exp(sigma) against an Exp(b) outcome.
double exp_crps_mean(double sigma, double b) {
  return b + 2.0 * sigma * sigma / (sigma + b) - 1.5 * sigma;
}

TEST(ShiftLaw, Validation) {
  EXPECT_ERROR_CODE(hedging::multiplicative_nodes(ShiftLaw::two_point(1.0)), ErrorCode::kNotAShift);
  EXPECT_ERROR_CODE(hedging::multiplicative_nodes(ShiftLaw::log_normal(0.0)), ErrorCode::kNotAShift);
  EXPECT_ERROR_CODE(hedging::additive_nodes(ShiftLaw::two_point(0.0)), ErrorCode::kNotAShift);
  EXPECT_ERROR_CODE(hedging::parse_shift_law("bogus:2"), ErrorCode::kUnknownKind);
  EXPECT_ERROR_CODE(hedging::parse_shift_law("two-point"), ErrorCode::kDataError);
  const auto p = hedging::parse_shift_law("two-point:3");
  EXPECT_EQ(p.form, ShiftLaw::Form::kTwoPoint);
  EXPECT_EQ(p.spread, 3.0);
}

TEST(ShiftLaw, NodeWeightsAndMoments) {
  for (const auto& law : {ShiftLaw::log_uniform(3.0), ShiftLaw::log_normal(0.4)}) {
    double w = 0.0;
    double m = 0.0;
    for (const auto& n : hedging::multiplicative_nodes(law)) {
      w += n.weight;
      m += n.weight * std::log(n.value);
    }
    EXPECT_NEAR(w, 1.0, 1e-12);
    EXPECT_NEAR(m, 0.0, 1e-12);
  }
  double v = 0.0;
  for (const auto& n : hedging::additive_nodes(ShiftLaw::log_normal(0.5, 2.0))) {
    v += n.weight * (n.value - 2.0) * (n.value - 2.0);
  }
  EXPECT_NEAR(v, 0.25, 1e-10);
}

TEST(ShiftedLoss, MatchesAssembledFormula) {
  const auto fam = families::parse_scale_family("exponential-scale");
  for (double s : {0.4, 1.0, 1.3, 3.0}) {
    const double want = 0.5 * (exp_crps_mean(s, 2.0) + exp_crps_mean(s, 0.5));
    EXPECT_NEAR(hedging::shifted_expected_loss(of(LossTag::kCrps), fam, ShiftLaw::two_point(2.0), s), want,
                1e-8);
  }
  EXPECT_GT(hedging::shifted_expected_loss(of(LossTag::kCrps), fam, ShiftLaw::two_point(2.0), 1e6),
            hedging::shifted_expected_loss(of(LossTag::kCrps), fam, ShiftLaw::two_point(2.0), 1.0));
  EXPECT_ERROR_CODE(hedging::shifted_expected_loss(of(LossTag::kCrps), fam, ShiftLaw::two_point(2.0), 0.0),
                    ErrorCode::kParameterOutOfDomain);
}

TEST(OptimalScale, Directions) {
  const auto fam = families::parse_scale_family("exponential-scale");
  const auto c = hedging::optimal_scale(of(LossTag::kCrps), fam, ShiftLaw::two_point(2.0));
  EXPECT_EQ(c.direction, Direction::kInflate);
  EXPECT_LT(c.hedged_loss, c.baseline_loss);
  const auto q = hedging::optimal_scale(of(LossTag::kQuadratic), fam, ShiftLaw::two_point(2.0));
  EXPECT_EQ(q.direction, Direction::kDeflate);
  EXPECT_EQ(hedging::hedge_scale_direction(of(LossTag::kCrps), families::parse_scale_family("normal-scale"))
                .direction,
            Direction::kInflate);
  EXPECT_EQ(hedging::hedge_scale_direction(of(LossTag::kQuadratic), fam).direction, Direction::kDeflate);
}

TEST(OptimalScale, MatchesBruteForceGrid) {
  const auto fam = families::parse_scale_family("exponential-scale");
  const ShiftLaw law = ShiftLaw::two_point(2.0);
  double best = 0.0;
  double best_f = std::numeric_limits<double>::infinity();
  for (double ls = std::log(0.25); ls <= std::log(4.0); ls += 1e-3) {
    const double s = std::exp(ls);
    const double f = 0.5 * (exp_crps_mean(s, 2.0) + exp_crps_mean(s, 0.5));
    if (f < best_f) {
      best_f = f;
      best = s;
    }
  }
  const auto h = hedging::optimal_scale(of(LossTag::kCrps), fam, law);
  EXPECT_NEAR(std::log(h.optimum), std::log(best), 1e-3);
  EXPECT_NEAR(h.hedged_loss, best_f, 1e-6);
}

TEST(OptimalScale, RejectsLogLoss) {
  const auto fam = families::parse_scale_family("exponential-scale");
  EXPECT_ERROR_CODE(hedging::optimal_scale(of(LossTag::kLog), fam, ShiftLaw::two_point(2.0)),
                    ErrorCode::kNotSymmetricRescalable);
  EXPECT_ERROR_CODE(hedging::hedge_scale_direction(of(LossTag::kSpherical), fam),
                    ErrorCode::kNotSymmetricRescalable);
}

TEST(ExpFamHedge, Examples) {
  const auto e = families::expfam_descriptor("exponential-scale");
  const auto h = hedging::hedge_expfam_optimum(e, ShiftLaw::two_point(2.0));
  EXPECT_NEAR(h.optimum, 0.8, 1e-12);
  EXPECT_NEAR(h.optimum_conventional, 1.25, 1e-12);
  EXPECT_EQ(h.direction, Direction::kInflate);
  EXPECT_NEAR(h.baseline_loss - h.hedged_loss, e.bregman(1.0, 0.8), 1e-12);

  const auto tiny = hedging::hedge_expfam_optimum(e, ShiftLaw::log_normal(1e-7));
  EXPECT_NEAR(tiny.optimum, 1.0, 1e-10);

  const auto p = families::expfam_descriptor("poisson-rate");
  const auto hp = hedging::hedge_expfam_optimum(p, ShiftLaw::two_point(1.0, 0.0));
  EXPECT_NEAR(hp.optimum, std::log(std::cosh(1.0)), 1e-12);
  EXPECT_EQ(hp.direction, Direction::kInflate);
}

TEST(ExpFamHedge, BregmanCertificate) {
  Rng rng = substream(kDefaultSeed, 41);
  for (const char* kind : {"exponential-scale", "gamma-scale", "normal-scale", "pareto-shape"}) {
    const auto d = families::expfam_descriptor(kind);
    const ShiftLaw law = ShiftLaw::log_uniform(2.5);
    const auto h = hedging::hedge_expfam_optimum(d, law);
    for (int i = 0; i < 20; ++i) {
      const double eta = 0.3 + 3.0 * uniform01(rng);
      const double gap = hedging::expfam_expected_divergence(d, law, eta) -
                         hedging::expfam_expected_divergence(d, law, h.optimum);
      EXPECT_NEAR(gap, d.bregman(eta, h.optimum), 1e-8 * std::max(1.0, gap)) << kind;
      EXPECT_GE(gap, -1e-12);
    }
  }
}

TEST(Propriety, MixtureBeatsHedgedScale) {
  const auto fam = families::parse_scale_family("exponential-scale");
  const double a = 2.0;
  const families::DistPtr mix = std::make_shared<families::Mixture>(
      std::vector<families::DistPtr>{fam.member(a), fam.member(1.0 / a)}, std::vector<double>{0.5, 0.5});
  const auto h = hedging::optimal_scale(of(LossTag::kCrps), fam, ShiftLaw::two_point(a));
  const double m = 0.5 * (divergence::expected_loss(of(LossTag::kCrps), mix, fam.member(a)) +
                          divergence::expected_loss(of(LossTag::kCrps), mix, fam.member(1.0 / a)));
  EXPECT_LE(m, h.hedged_loss + 1e-9);
}

}  // namespace

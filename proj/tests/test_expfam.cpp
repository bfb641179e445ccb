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

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "asymscore/divergence.hpp"
#include "asymscore/expfam.hpp"
#include "asymscore/random.hpp"
#include "test_util.hpp"

namespace {

using namespace asymscore;
using families::expfam_descriptor;

// KL(member(eta_g) || member(eta_f)) straight from the densities.
double kl_oracle(const families::ExpFamDescriptor& d, double eta_f, double eta_g) {
  const auto F = d.member(eta_f);
  const auto G = d.member(eta_g);
  if (G->is_discrete()) {
    double s = 0.0;
    for (int k = 0; k < 200; ++k) {
      const double lg = G->log_pdf(k);
      if (std::isfinite(lg)) s += std::exp(lg) * (lg - F->log_pdf(k));
    }
    return s;
  }
  // Integrate over probability levels so heavy tails stay on a finite range.
  auto f = [&](double u) {
    const double x = G->quantile(u);
    return G->log_pdf(x) - F->log_pdf(x);
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, 0.0, 0.5) + ts.integrate(f, 0.5, 1.0);
}

TEST(ExpFam, CatalogHasEveryEntry) {
  EXPECT_EQ(families::expfam_catalog().size(), 13u);
  for (const auto& kind : families::expfam_catalog()) {
    EXPECT_NO_THROW(expfam_descriptor(kind)) << kind;
  }
}

TEST(ExpFam, LogPartitionExamples) {
  const auto e = expfam_descriptor("exponential-scale");
  EXPECT_EQ(e.omega(), families::Omega::kPositive);
  for (double eta : {0.5, 1.0, 3.0}) {
    EXPECT_NEAR(e.logA(eta), -std::log(eta), 1e-15);
    EXPECT_NEAR(e.dA(eta), -1.0 / eta, 1e-15);
    EXPECT_NEAR(e.d2A(eta), 1.0 / (eta * eta), 1e-15);
  }
  const auto p = expfam_descriptor("poisson-rate");
  EXPECT_EQ(p.omega(), families::Omega::kReal);
  EXPECT_NEAR(p.logA(0.7), std::exp(0.7), 1e-15);
  const auto b = expfam_descriptor("beta-shape", {2.0});
  const double oracle = boost::math::trigamma(1.0) - boost::math::trigamma(3.0);
  EXPECT_NEAR(oracle, 1.25, 1e-12);
  EXPECT_NEAR(b.d2A(1.0), oracle, 1e-10);
}

TEST(ExpFam, BregmanIsKlOfMembers) {
  for (const auto& kind : families::expfam_catalog()) {
    const auto d = expfam_descriptor(kind);
    const bool real = d.omega() == families::Omega::kReal;
    const double pairs[][2] = {{1.5, 2.0}, {3.0, 1.5}, {2.0, 2.5}};
    for (const auto& pr : pairs) {
      const double f = real ? pr[0] - 2.0 : pr[0];
      const double g = real ? pr[1] - 2.0 : pr[1];
      const double b = d.bregman(f, g);
      EXPECT_NEAR(b, kl_oracle(d, f, g), 1e-8 * std::max(1.0, b)) << kind << " " << f << " " << g;
      EXPECT_NEAR(divergence::expfam_kl(d, f, g), b, 1e-14);
    }
  }
}

TEST(ExpFam, KlExamples) {
  const auto e = expfam_descriptor("exponential-scale");
  EXPECT_NEAR(divergence::expfam_kl(e, 2.0, 1.0), 1.0 - std::log(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(divergence::expfam_kl(e, 1.3, 1.3), 0.0);
  const auto p = expfam_descriptor("poisson-rate");
  EXPECT_NEAR(divergence::expfam_kl(p, 1.0, 0.0), std::exp(1.0) - 2.0, 1e-14);
}

TEST(ExpFam, MeanOfSufficientStatisticIsDerivative) {
  for (const auto& kind : {"exponential-scale", "gamma-scale", "pareto-shape", "beta-shape",
                           "poisson-rate", "normal-scale"}) {
    const auto d = expfam_descriptor(kind);
    const double eta = d.omega() == families::Omega::kReal ? 0.4 : 1.7;
    const auto M = d.member(eta);
    Rng rng = substream(kDefaultSeed, 17);
    const int n = 200000;
    double s = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = d.T(M->sample(rng));
      s += t;
      s2 += t * t;
    }
    const double m = s / n;
    const double se = std::sqrt((s2 / n - m * m) / n);
    EXPECT_NEAR(m, d.dA(eta), 5.0 * se) << kind;
  }
}

TEST(ExpFam, DerivativeInverseRoundTrips) {
  for (const auto& kind : families::expfam_catalog()) {
    const auto d = expfam_descriptor(kind);
    for (double eta : {0.6, 1.0, 2.2}) {
      EXPECT_NEAR(d.dA_inverse(d.dA(eta)), eta, 1e-9 * eta) << kind;
    }
  }
  EXPECT_ERROR_CODE(expfam_descriptor("exponential-scale").dA_inverse(0.5),
                    ErrorCode::kExpectationOutsideRange);
}

TEST(ExpFam, ParameterMapsInvert) {
  for (const auto& kind : families::expfam_catalog()) {
    const auto d = expfam_descriptor(kind);
    for (double c : {0.7, 1.0, 2.5}) {
      EXPECT_NEAR(d.from_natural(d.to_natural(c)), c, 1e-12) << kind;
    }
  }
}

TEST(ExpFam, RejectsOutsideOmega) {
  EXPECT_ERROR_CODE(expfam_descriptor("exponential-scale").logA(-1.0),
                    ErrorCode::kParameterOutOfDomain);
  EXPECT_ERROR_CODE(expfam_descriptor("nonsense"), ErrorCode::kUnknownKind);
}

}  // namespace

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

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/cauchy.hpp>
#include <boost/math/distributions/exponential.hpp>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/inverse_gamma.hpp>
#include <boost/math/distributions/inverse_gaussian.hpp>
#include <boost/math/distributions/laplace.hpp>
#include <boost/math/distributions/lognormal.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/pareto.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <boost/math/distributions/uniform.hpp>
#include <boost/math/distributions/weibull.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "asymscore/families.hpp"
#include "asymscore/special.hpp"
#include "test_util.hpp"

namespace {

using namespace asymscore;
using families::DistPtr;

struct OracleCase {
  std::string spec;
  std::function<double(double)> pdf;
  std::function<double(double)> cdf;
  std::function<double(double)> quantile;
  double mean;
  double variance;
};

template <class D>
OracleCase boost_case(std::string spec, D d) {
  return {std::move(spec),
          [d](double x) { return boost::math::pdf(d, x); },
          [d](double x) { return boost::math::cdf(d, x); },
          [d](double p) { return boost::math::quantile(d, p); },
          boost::math::mean(d),
          boost::math::variance(d)};
}

std::vector<OracleCase> oracle_cases() {
  namespace bm = boost::math;
  std::vector<OracleCase> c;
  c.push_back(boost_case("normal:0.5,2", bm::normal(0.5, 2.0)));
  c.push_back(boost_case("exponential:1.5", bm::exponential(1.0 / 1.5)));
  c.push_back(boost_case("laplace:0.3,1.3", bm::laplace(0.3, 1.3)));
  c.push_back(boost_case("weibull:1.7,2", bm::weibull(1.7, 2.0)));
  c.push_back(boost_case("gamma:2.5,1.2", bm::gamma_distribution<>(2.5, 1.2)));
  c.push_back(boost_case("log-normal:0.2,0.6", bm::lognormal(0.2, 0.6)));
  c.push_back(boost_case("inverse-gamma:6,1.5", bm::inverse_gamma(6.0, 1.5)));
  c.push_back(boost_case("pareto:5,1.2", bm::pareto(1.2, 5.0)));
  c.push_back(boost_case("inverse-gaussian:1.3,2", bm::inverse_gaussian(1.3, 2.0)));
  c.push_back(boost_case("beta:2,3", bm::beta_distribution<>(2.0, 3.0)));
  c.push_back(boost_case("uniform:-1,2", bm::uniform(-1.0, 2.0)));
  // Generalized gamma as sigma * Y^(1/gamma), Y ~ Gamma(k / gamma).
  const double s = 1.3, g = 1.5, k = 2.5;
  const bm::gamma_distribution<> y(k / g);
  c.push_back({"generalized-gamma:1.3,1.5,2.5",
               [=](double x) {
                 if (x <= 0.0) return 0.0;
                 const double u = std::pow(x / s, g);
                 return bm::pdf(y, u) * g * u / x;
               },
               [=](double x) { return x <= 0.0 ? 0.0 : bm::cdf(y, std::pow(x / s, g)); },
               [=](double p) { return s * std::pow(bm::quantile(y, p), 1.0 / g); },
               s * std::tgamma((k + 1.0) / g) / std::tgamma(k / g),
               s * s * (std::tgamma((k + 2.0) / g) / std::tgamma(k / g) -
                        std::pow(std::tgamma((k + 1.0) / g) / std::tgamma(k / g), 2))});
  return c;
}

TEST(Families, MatchBoostOracles) {
  for (const auto& c : oracle_cases()) {
    SCOPED_TRACE(c.spec);
    const DistPtr d = families::parse_distribution(c.spec);
    for (double p : {0.01, 0.1, 0.3, 0.5, 0.77, 0.95, 0.999}) {
      const double x = c.quantile(p);
      EXPECT_NEAR(d->quantile(p), x, 1e-9 * std::max(1.0, std::fabs(x)));
      EXPECT_NEAR(d->cdf(x), c.cdf(x), 1e-12);
      EXPECT_NEAR(d->sf(x), 1.0 - c.cdf(x), 1e-12);
      EXPECT_NEAR(d->pdf(x), c.pdf(x), 1e-11 * std::max(1.0, c.pdf(x)));
      if (c.pdf(x) > 0.0) EXPECT_NEAR(d->log_pdf(x), std::log(c.pdf(x)), 1e-10);
    }
    EXPECT_NEAR(d->mean(), c.mean, 1e-12 * std::max(1.0, std::fabs(c.mean)));
    EXPECT_NEAR(d->variance(), c.variance, 1e-10 * std::max(1.0, c.variance));
  }
}

TEST(Families, PoissonAndCauchyAgainstBoost) {
  const auto p = families::parse_distribution("poisson:3.5");
  const boost::math::poisson_distribution<> bp(3.5);
  EXPECT_TRUE(p->is_discrete());
  for (int k = 0; k < 15; ++k) {
    EXPECT_NEAR(p->pdf(k), boost::math::pdf(bp, k), 1e-14);
    EXPECT_NEAR(p->cdf(k), boost::math::cdf(bp, k), 1e-13);
  }
  const auto c = families::parse_distribution("cauchy:0.5,2");
  const boost::math::cauchy_distribution<> bc(0.5, 2.0);
  for (double x : {-30.0, -1.0, 0.5, 3.0, 100.0}) {
    EXPECT_NEAR(c->pdf(x), boost::math::pdf(bc, x), 1e-14);
    EXPECT_NEAR(c->cdf(x), boost::math::cdf(bc, x), 1e-14);
  }
  EXPECT_FALSE(c->has_first_moment());
}

TEST(Families, DensityExamples) {
  EXPECT_DOUBLE_EQ(families::Exponential(1.0).pdf(0.0), 1.0);
  EXPECT_NEAR(families::AsymmetricLaplace(0.0, 1.0, 0.2).pdf(0.0), 0.16, 1e-15);
  // Generalized gamma with gamma = 2, k = 1 reflected is N(0, 1/2).
  const families::SymmetricGeneralizedGamma sgg(1.0, 2.0, 1.0);
  const boost::math::normal n(0.0, std::sqrt(0.5));
  double worst = 0.0;
  for (double x = -4.0; x <= 4.0; x += 0.05) {
    worst = std::max(worst, std::fabs(sgg.pdf(x) - boost::math::pdf(n, x)));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(Families, AffineIsTheLawOfShiftPlusScale) {
  const auto g = families::parse_distribution("gamma:2,1");
  const auto a = g->affine(3.0, 0.5);
  for (double x : {3.1, 3.5, 4.0, 6.0}) {
    EXPECT_NEAR(a->cdf(x), g->cdf((x - 3.0) / 0.5), 1e-14);
    EXPECT_NEAR(a->pdf(x), g->pdf((x - 3.0) / 0.5) / 0.5, 1e-14);
  }
  EXPECT_NEAR(a->mean(), 3.0 + 0.5 * g->mean(), 1e-14);
  EXPECT_NEAR(a->variance(), 0.25 * g->variance(), 1e-14);
}

TEST(Families, MixtureMoments) {
  const families::Mixture m({families::parse_distribution("normal:-1,1"),
                             families::parse_distribution("normal:2,0.5")},
                            {0.25, 0.75});
  EXPECT_NEAR(m.mean(), 1.25, 1e-14);
  EXPECT_NEAR(m.variance(), 0.25 * 2.0 + 0.75 * 4.25 - 1.5625, 1e-13);
  EXPECT_NEAR(m.cdf(m.quantile(0.4)), 0.4, 1e-10);
}

TEST(Families, RejectsBadInput) {
  EXPECT_ERROR_CODE(families::make_family("normal", {0.0, -1.0}), ErrorCode::kParameterOutOfDomain);
  EXPECT_ERROR_CODE(families::make_family("beta", {0.0, 1.0}), ErrorCode::kParameterOutOfDomain);
  EXPECT_ERROR_CODE(families::make_family("asymmetric-laplace", {0.0, 1.0, 1.0}),
                    ErrorCode::kParameterOutOfDomain);
  EXPECT_ERROR_CODE(families::parse_distribution("zipf:2"), ErrorCode::kUnknownKind);
  EXPECT_ERROR_CODE(families::parse_scale_family("nonsense-scale"), ErrorCode::kUnknownKind);
}

TEST(Families, ScaleAndLocationMembers) {
  const auto s = families::parse_scale_family("gamma-scale:3");
  const auto m = s.member(2.0);
  EXPECT_NEAR(m->mean(), 6.0, 1e-12);
  const auto l = families::parse_location_family("laplace-location");
  EXPECT_NEAR(l.member(1.5)->mean(), 1.5, 1e-14);
}

TEST(Special, TrigammaAndGammaAgainstBoost) {
  for (double x : {0.3, 1.0, 2.5, 7.0, 40.0}) {
    EXPECT_NEAR(numerics::trigamma(x), boost::math::trigamma(x), 1e-12 * boost::math::trigamma(x));
    EXPECT_NEAR(numerics::log_gamma(x), boost::math::lgamma(x), 1e-12 * std::max(1.0, std::fabs(boost::math::lgamma(x))));
    for (double z : {0.1, 1.0, 5.0}) {
      EXPECT_NEAR(numerics::gamma_p(x, z), boost::math::gamma_p(x, z), 1e-12);
    }
  }
  EXPECT_NEAR(numerics::trigamma(1.0), M_PI * M_PI / 6.0, 1e-12);
  for (double x : {0.5, 1.0, 5.0}) EXPECT_GT(numerics::trigamma(x), numerics::trigamma(x + 1.0));
  double prev = 0.0;
  for (double x : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const double v = x * x * x * numerics::trigamma(x);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(Special, NormalQuantileInvertsCdf) {
  for (double p : {1e-12, 1e-5, 0.02, 0.5, 0.9, 1.0 - 1e-9}) {
    EXPECT_NEAR(numerics::normal_cdf(numerics::normal_quantile(p)), p, 1e-14 + 1e-12 * p);
  }
}

}  // namespace

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

#include "asymscore/families.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "asymscore/error.hpp"
#include "asymscore/special.hpp"

namespace asymscore::families {

namespace {

using numerics::kLogSqrt2Pi;
using numerics::kPi;
using numerics::log_gamma;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kParameterOutOfDomain, what);
}

bool positive(double x) { return x > 0.0 && std::isfinite(x); }

double check_level(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kParameterOutOfDomain, "probability level outside [0,1]");
  }
  return p;
}

[[noreturn]] void infinite_moment(const std::string& kind) {
  throw Error(ErrorCode::kInfiniteMoments, kind + " moment does not exist");
}

// Density at the origin for x^(k-1) type behaviour.
double power_origin(double k, double value_if_one) {
  if (k < 1.0) return kInf;
  if (k == 1.0) return value_if_one;
  return 0.0;
}

double log_normal_cdf(double z) {
  if (z > -30.0) return std::log(numerics::normal_cdf(z));
  const double z2 = z * z;
  return -0.5 * z2 - std::log(-z) - kLogSqrt2Pi + std::log1p(-1.0 / z2 + 3.0 / (z2 * z2));
}

}  // namespace

// ---------------------------------------------------------------- base

double Distribution::log_pdf(double x) const {
  const double f = pdf(x);
  return f > 0.0 ? std::log(f) : kNegInf;
}

double Distribution::quantile(double p) const {
  check_level(p);
  const Support s = support();
  if (p == 0.0) return s.lower;
  if (p == 1.0) return s.upper;
  return solve_quantile(p, false);
}

double Distribution::upper_quantile(double q) const {
  check_level(q);
  const Support s = support();
  if (q == 0.0) return s.upper;
  if (q == 1.0) return s.lower;
  return solve_quantile(q, true);
}

double Distribution::sd() const { return std::sqrt(variance()); }

double Distribution::sample(Rng& rng) const { return quantile(uniform01(rng)); }

DistPtr Distribution::affine(double shift, double scale) const {
  require(positive(scale) && std::isfinite(shift), "affine map needs finite shift and scale > 0");
  if (shift == 0.0 && scale == 1.0) return shared_from_this();
  if (is_discrete()) {
    throw Error(ErrorCode::kUnsupported, "affine maps of lattice laws are not supported");
  }
  return std::make_shared<Affine>(shared_from_this(), shift, scale);
}

const std::vector<double>& Distribution::breakpoints() const {
  std::call_once(breakpoints_once_, [this] { breakpoints_ = compute_breakpoints(); });
  return breakpoints_;
}

std::vector<double> Distribution::compute_breakpoints() const {
  static constexpr double kLevels[] = {1e-14, 1e-12, 1e-10, 1e-8, 1e-6, 1e-4,
                                       1e-3,  1e-2,  0.05,  0.15, 0.3,  0.5};
  const Support s = support();
  std::vector<double> pts{s.lower, s.upper};
  for (double k : kinks()) pts.push_back(k);
  for (double p : kLevels) {
    pts.push_back(quantile(p));
    if (p < 0.5) pts.push_back(upper_quantile(p));
  }
  std::vector<double> out;
  for (double x : pts) {
    if (!std::isnan(x) && x >= s.lower && x <= s.upper) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double Distribution::solve_quantile(double level, bool upper) const {
  const Support s = support();
  const auto left_of_quantile = [&](double x) {
    return upper ? sf(x) > level : cdf(x) < level;
  };
  const bool lower_finite = std::isfinite(s.lower);
  const bool upper_finite = std::isfinite(s.upper);
  double x0;
  if (lower_finite && upper_finite) {
    x0 = 0.5 * (s.lower + s.upper);
  } else if (lower_finite) {
    x0 = s.lower + std::max(1.0, std::abs(s.lower));
  } else if (upper_finite) {
    x0 = s.upper - std::max(1.0, std::abs(s.upper));
  } else {
    x0 = 0.0;
  }
  double lo = x0;
  double hi = x0;
  double step = 1.0;
  int guard = 0;
  if (left_of_quantile(x0)) {
    while (left_of_quantile(hi)) {
      lo = hi;
      if (upper_finite) {
        hi = hi + 0.5 * (s.upper - hi);
        if (hi >= s.upper || s.upper - hi < 1e-300) { hi = s.upper; break; }
      } else {
        hi += step;
        step *= 2.0;
      }
      if (++guard > 4000) throw Error(ErrorCode::kNonConvergence, "quantile bracket");
    }
  } else {
    while (!left_of_quantile(lo)) {
      hi = lo;
      if (lower_finite) {
        lo = s.lower + 0.5 * (lo - s.lower);
        if (lo <= s.lower || lo - s.lower < 1e-300) { lo = s.lower; break; }
      } else {
        lo -= step;
        step *= 2.0;
      }
      if (++guard > 4000) throw Error(ErrorCode::kNonConvergence, "quantile bracket");
    }
  }
  for (int iter = 0; iter < 400; ++iter) {
    double mid;
    if (lower_finite && lo > s.lower && (hi - s.lower) > 4.0 * (lo - s.lower)) {
      mid = s.lower + std::sqrt((lo - s.lower) * (hi - s.lower));
    } else if (upper_finite && hi < s.upper && (s.upper - lo) > 4.0 * (s.upper - hi)) {
      mid = s.upper - std::sqrt((s.upper - lo) * (s.upper - hi));
    } else if (lower_finite && lo == s.lower && hi > s.lower) {
      mid = s.lower + 1e-3 * (hi - s.lower);  // geometric descent toward the bound
    } else {
      mid = lo + 0.5 * (hi - lo);
    }
    if (!(mid > lo && mid < hi)) break;
    if (left_of_quantile(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 2e-16 * std::max(std::abs(lo), std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

std::string Distribution::describe() const {
  std::ostringstream out;
  out << kind() << "(";
  const std::vector<double> p = params();
  for (std::size_t i = 0; i < p.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", p[i]);
    out << (i ? "," : "") << buf;
  }
  out << ")";
  return out.str();
}

// -------------------------------------------------------------- normal

Normal::Normal(double mu, double sigma) : mu_(mu), sigma_(sigma) {
  require(std::isfinite(mu) && positive(sigma), "normal needs finite mu and sigma > 0");
}
Support Normal::support() const { return {kNegInf, kInf}; }
double Normal::pdf(double x) const {
  return numerics::normal_pdf((x - mu_) / sigma_) / sigma_;
}
double Normal::log_pdf(double x) const {
  const double z = (x - mu_) / sigma_;
  return -0.5 * z * z - kLogSqrt2Pi - std::log(sigma_);
}
double Normal::cdf(double x) const { return numerics::normal_cdf((x - mu_) / sigma_); }
double Normal::sf(double x) const { return numerics::normal_cdf((mu_ - x) / sigma_); }
double Normal::quantile(double p) const {
  check_level(p);
  return mu_ + sigma_ * numerics::normal_quantile(p);
}
double Normal::upper_quantile(double q) const {
  check_level(q);
  return mu_ - sigma_ * numerics::normal_quantile(q);
}
double Normal::sample(Rng& rng) const { return mu_ + sigma_ * standard_normal(rng); }
DistPtr Normal::affine(double shift, double scale) const {
  require(positive(scale) && std::isfinite(shift), "affine map needs scale > 0");
  return std::make_shared<Normal>(shift + scale * mu_, scale * sigma_);
}

// --------------------------------------------------------- exponential

Exponential::Exponential(double sigma) : sigma_(sigma) {
  require(positive(sigma), "exponential needs sigma > 0");
}
Support Exponential::support() const { return {0.0, kInf}; }
double Exponential::pdf(double x) const {
  return x < 0.0 ? 0.0 : std::exp(-x / sigma_) / sigma_;
}
double Exponential::log_pdf(double x) const {
  return x < 0.0 ? kNegInf : -x / sigma_ - std::log(sigma_);
}
double Exponential::cdf(double x) const { return x <= 0.0 ? 0.0 : -std::expm1(-x / sigma_); }
double Exponential::sf(double x) const { return x <= 0.0 ? 1.0 : std::exp(-x / sigma_); }
double Exponential::quantile(double p) const {
  check_level(p);
  return -sigma_ * std::log1p(-p);
}
double Exponential::upper_quantile(double q) const {
  check_level(q);
  return -sigma_ * std::log(q);
}
double Exponential::sample(Rng& rng) const { return -sigma_ * std::log(uniform01(rng)); }
DistPtr Exponential::affine(double shift, double scale) const {
  if (shift == 0.0) {
    require(positive(scale), "affine map needs scale > 0");
    return std::make_shared<Exponential>(scale * sigma_);
  }
  return Distribution::affine(shift, scale);
}

// ------------------------------------------------------------- laplace

Laplace::Laplace(double mu, double b) : mu_(mu), b_(b) {
  require(std::isfinite(mu) && positive(b), "laplace needs finite mu and b > 0");
}
Support Laplace::support() const { return {kNegInf, kInf}; }
double Laplace::pdf(double x) const { return std::exp(-std::abs(x - mu_) / b_) / (2.0 * b_); }
double Laplace::log_pdf(double x) const { return -std::abs(x - mu_) / b_ - std::log(2.0 * b_); }
double Laplace::cdf(double x) const {
  return x < mu_ ? 0.5 * std::exp((x - mu_) / b_) : 1.0 - 0.5 * std::exp(-(x - mu_) / b_);
}
double Laplace::sf(double x) const {
  return x < mu_ ? 1.0 - 0.5 * std::exp((x - mu_) / b_) : 0.5 * std::exp(-(x - mu_) / b_);
}
double Laplace::quantile(double p) const {
  check_level(p);
  return p < 0.5 ? mu_ + b_ * std::log(2.0 * p) : mu_ - b_ * std::log(2.0 * (1.0 - p));
}
double Laplace::upper_quantile(double q) const {
  check_level(q);
  return q < 0.5 ? mu_ - b_ * std::log(2.0 * q) : quantile(1.0 - q);
}
DistPtr Laplace::affine(double shift, double scale) const {
  require(positive(scale) && std::isfinite(shift), "affine map needs scale > 0");
  return std::make_shared<Laplace>(shift + scale * mu_, scale * b_);
}

// ------------------------------------------------------------- weibull

Weibull::Weibull(double k, double sigma) : k_(k), sigma_(sigma) {
  require(positive(k) && positive(sigma), "weibull needs k > 0 and sigma > 0");
}
Support Weibull::support() const { return {0.0, kInf}; }
double Weibull::pdf(double x) const {
  if (x < 0.0) return 0.0;
  if (x == 0.0) return power_origin(k_, 1.0 / sigma_);
  return std::exp(log_pdf(x));
}
double Weibull::log_pdf(double x) const {
  if (x < 0.0) return kNegInf;
  if (x == 0.0) return std::log(pdf(x));
  const double z = x / sigma_;
  return std::log(k_ / sigma_) + (k_ - 1.0) * std::log(z) - std::pow(z, k_);
}
double Weibull::cdf(double x) const {
  return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / sigma_, k_));
}
double Weibull::sf(double x) const { return x <= 0.0 ? 1.0 : std::exp(-std::pow(x / sigma_, k_)); }
double Weibull::quantile(double p) const {
  check_level(p);
  return sigma_ * std::pow(-std::log1p(-p), 1.0 / k_);
}
double Weibull::upper_quantile(double q) const {
  check_level(q);
  return sigma_ * std::pow(-std::log(q), 1.0 / k_);
}
double Weibull::mean() const { return sigma_ * std::exp(log_gamma(1.0 + 1.0 / k_)); }
double Weibull::variance() const {
  const double m = std::exp(log_gamma(1.0 + 1.0 / k_));
  return sigma_ * sigma_ * (std::exp(log_gamma(1.0 + 2.0 / k_)) - m * m);
}
DistPtr Weibull::affine(double shift, double scale) const {
  if (shift == 0.0) {
    require(positive(scale), "affine map needs scale > 0");
    return std::make_shared<Weibull>(k_, scale * sigma_);
  }
  return Distribution::affine(shift, scale);
}

// --------------------------------------------------------------- gamma

Gamma::Gamma(double k, double sigma) : k_(k), sigma_(sigma) {
  require(positive(k) && positive(sigma), "gamma needs k > 0 and sigma > 0");
}
Support Gamma::support() const { return {0.0, kInf}; }
double Gamma::pdf(double x) const {
  if (x < 0.0) return 0.0;
  if (x == 0.0) return power_origin(k_, 1.0 / sigma_);
  return std::exp(log_pdf(x));
}
double Gamma::log_pdf(double x) const {
  if (x < 0.0) return kNegInf;
  if (x == 0.0) return std::log(pdf(x));
  return -log_gamma(k_) - k_ * std::log(sigma_) + (k_ - 1.0) * std::log(x) - x / sigma_;
}
double Gamma::cdf(double x) const { return x <= 0.0 ? 0.0 : numerics::gamma_p(k_, x / sigma_); }
double Gamma::sf(double x) const { return x <= 0.0 ? 1.0 : numerics::gamma_q(k_, x / sigma_); }
double Gamma::sample(Rng& rng) const {
  // Marsaglia-Tsang, with the usual boost for shape below one.
  const double shape = k_ < 1.0 ? k_ + 1.0 : k_;
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  double draw;
  for (;;) {
    const double z = standard_normal(rng);
    double v = 1.0 + c * z;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = uniform01(rng);
    if (std::log(u) < 0.5 * z * z + d - d * v + d * std::log(v)) {
      draw = d * v;
      break;
    }
  }
  if (k_ < 1.0) draw *= std::pow(uniform01(rng), 1.0 / k_);
  return sigma_ * draw;
}
DistPtr Gamma::affine(double shift, double scale) const {
  if (shift == 0.0) {
    require(positive(scale), "affine map needs scale > 0");
    return std::make_shared<Gamma>(k_, scale * sigma_);
  }
  return Distribution::affine(shift, scale);
}

// --------------------------------------------------- generalized gamma

GeneralizedGamma::GeneralizedGamma(double sigma, double gamma, double k)
    : sigma_(sigma), gamma_(gamma), k_(k) {
  require(positive(sigma) && positive(gamma) && positive(k),
          "generalized gamma needs sigma, gamma, k > 0");
  log_norm_ = std::log(gamma_) - k_ * std::log(sigma_) - log_gamma(k_ / gamma_);
}
Support GeneralizedGamma::support() const { return {0.0, kInf}; }
double GeneralizedGamma::pdf(double x) const {
  if (x < 0.0) return 0.0;
  if (x == 0.0) return power_origin(k_, std::exp(log_norm_));
  return std::exp(log_pdf(x));
}
double GeneralizedGamma::log_pdf(double x) const {
  if (x < 0.0) return kNegInf;
  if (x == 0.0) return std::log(pdf(x));
  return log_norm_ + (k_ - 1.0) * std::log(x) - std::pow(x / sigma_, gamma_);
}
double GeneralizedGamma::cdf(double x) const {
  return x <= 0.0 ? 0.0 : numerics::gamma_p(k_ / gamma_, std::pow(x / sigma_, gamma_));
}
double GeneralizedGamma::sf(double x) const {
  return x <= 0.0 ? 1.0 : numerics::gamma_q(k_ / gamma_, std::pow(x / sigma_, gamma_));
}
double GeneralizedGamma::mean() const {
  return sigma_ * std::exp(log_gamma((k_ + 1.0) / gamma_) - log_gamma(k_ / gamma_));
}
double GeneralizedGamma::variance() const {
  const double m = mean();
  return sigma_ * sigma_ * std::exp(log_gamma((k_ + 2.0) / gamma_) - log_gamma(k_ / gamma_)) -
         m * m;
}
DistPtr GeneralizedGamma::affine(double shift, double scale) const {
  if (shift == 0.0) {
    require(positive(scale), "affine map needs scale > 0");
    return std::make_shared<GeneralizedGamma>(scale * sigma_, gamma_, k_);
  }
  return Distribution::affine(shift, scale);
}

SymmetricGeneralizedGamma::SymmetricGeneralizedGamma(double sigma, double gamma, double k)
    : sigma_(sigma), gamma_(gamma), k_(k) {
  require(positive(sigma) && positive(gamma) && positive(k),
          "symmetric generalized gamma needs sigma, gamma, k > 0");
  log_norm_ = std::log(0.5 * gamma_) - k_ * std::log(sigma_) - log_gamma(k_ / gamma_);
}
Support SymmetricGeneralizedGamma::support() const { return {kNegInf, kInf}; }
double SymmetricGeneralizedGamma::pdf(double x) const {
  if (x == 0.0) return power_origin(k_, std::exp(log_norm_));
  return std::exp(log_pdf(x));
}
double SymmetricGeneralizedGamma::log_pdf(double x) const {
  if (x == 0.0) return std::log(pdf(x));
  const double a = std::abs(x);
  return log_norm_ + (k_ - 1.0) * std::log(a) - std::pow(a / sigma_, gamma_);
}
double SymmetricGeneralizedGamma::cdf(double x) const {
  if (x == 0.0) return 0.5;
  const double t = std::pow(std::abs(x) / sigma_, gamma_);
  if (x < 0.0) return 0.5 * numerics::gamma_q(k_ / gamma_, t);
  return 0.5 + 0.5 * numerics::gamma_p(k_ / gamma_, t);
}
double SymmetricGeneralizedGamma::variance() const {
  return sigma_ * sigma_ * std::exp(log_gamma((k_ + 2.0) / gamma_) - log_gamma(k_ / gamma_));
}
std::vector<double> SymmetricGeneralizedGamma::kinks() const { return {0.0}; }
DistPtr SymmetricGeneralizedGamma::affine(double shift, double scale) const {
  if (shift == 0.0) {
    require(positive(scale), "affine map needs scale > 0");
    return std::make_shared<SymmetricGeneralizedGamma>(scale * sigma_, gamma_, k_);
  }
  return Distribution::affine(shift, scale);
}

// ---------------------------------------------------------- log-normal

LogNormal::LogNormal(double mu, double sigma) : mu_(mu), sigma_(sigma) {
  require(std::isfinite(mu) && positive(sigma), "log-normal needs finite mu and sigma > 0");
}
Support LogNormal::support() const { return {0.0, kInf}; }
double LogNormal::pdf(double x) const { return x <= 0.0 ? 0.0 : std::exp(log_pdf(x)); }
double LogNormal::log_pdf(double x) const {
  if (x <= 0.0) return kNegInf;
  const double z = (std::log(x) - mu_) / sigma_;
  return -std::log(x) - std::log(sigma_) - kLogSqrt2Pi - 0.5 * z * z;
}
double LogNormal::cdf(double x) const {
  return x <= 0.0 ? 0.0 : numerics::normal_cdf((std::log(x) - mu_) / sigma_);
}
double LogNormal::sf(double x) const {
  return x <= 0.0 ? 1.0 : numerics::normal_cdf((mu_ - std::log(x)) / sigma_);
}
double LogNormal::quantile(double p) const {
  check_level(p);
  return std::exp(mu_ + sigma_ * numerics::normal_quantile(p));
}
double LogNormal::upper_quantile(double q) const {
  check_level(q);
  return std::exp(mu_ - sigma_ * numerics::normal_quantile(q));
}
double LogNormal::mean() const { return std::exp(mu_ + 0.5 * sigma_ * sigma_); }
double LogNormal::variance() const {
  const double s2 = sigma_ * sigma_;
  return std::expm1(s2) * std::exp(2.0 * mu_ + s2);
}
double LogNormal::sample(Rng& rng) const { return std::exp(mu_ + sigma_ * standard_normal(rng)); }
DistPtr LogNormal::affine(double shift, double scale) const {
  if (shift == 0.0) {
    require(positive(scale), "affine map needs scale > 0");
    return std::make_shared<LogNormal>(mu_ + std::log(scale), sigma_);
  }
  return Distribution::affine(shift, scale);
}

// ------------------------------------------------------- inverse gamma

InverseGamma::InverseGamma(double k, double sigma) : k_(k), sigma_(sigma) {
  require(positive(k) && positive(sigma), "inverse gamma needs k > 0 and sigma > 0");
}
Support InverseGamma::support() const { return {0.0, kInf}; }
double InverseGamma::pdf(double x) const { return x <= 0.0 ? 0.0 : std::exp(log_pdf(x)); }
double InverseGamma::log_pdf(double x) const {
  if (x <= 0.0) return kNegInf;
  return k_ * std::log(sigma_) - log_gamma(k_) - (k_ + 1.0) * std::log(x) - sigma_ / x;
}
double InverseGamma::cdf(double x) const {
  return x <= 0.0 ? 0.0 : numerics::gamma_q(k_, sigma_ / x);
}
double InverseGamma::sf(double x) const {
  return x <= 0.0 ? 1.0 : numerics::gamma_p(k_, sigma_ / x);
}
double InverseGamma::mean() const {
  if (!(k_ > 1.0)) infinite_moment("inverse gamma first");
  return sigma_ / (k_ - 1.0);
}
double InverseGamma::variance() const {
  if (!(k_ > 2.0)) infinite_moment("inverse gamma second");
  return sigma_ * sigma_ / ((k_ - 1.0) * (k_ - 1.0) * (k_ - 2.0));
}
DistPtr InverseGamma::affine(double shift, double scale) const {
  if (shift == 0.0) {
    require(positive(scale), "affine map needs scale > 0");
    return std::make_shared<InverseGamma>(k_, scale * sigma_);
  }
  return Distribution::affine(shift, scale);
}

// -------------------------------------------------------------- pareto

Pareto::Pareto(double k, double m) : k_(k), m_(m) {
  require(positive(k) && positive(m), "pareto needs k > 0 and m > 0");
}
Support Pareto::support() const { return {m_, kInf}; }
double Pareto::pdf(double x) const { return x < m_ ? 0.0 : std::exp(log_pdf(x)); }
double Pareto::log_pdf(double x) const {
  if (x < m_) return kNegInf;
  return std::log(k_) + k_ * std::log(m_) - (k_ + 1.0) * std::log(x);
}
double Pareto::cdf(double x) const { return x <= m_ ? 0.0 : -std::expm1(k_ * std::log(m_ / x)); }
double Pareto::sf(double x) const { return x <= m_ ? 1.0 : std::pow(m_ / x, k_); }
double Pareto::quantile(double p) const {
  check_level(p);
  return m_ * std::exp(-std::log1p(-p) / k_);
}
double Pareto::upper_quantile(double q) const {
  check_level(q);
  return m_ * std::pow(q, -1.0 / k_);
}
double Pareto::mean() const {
  if (!(k_ > 1.0)) infinite_moment("pareto first");
  return k_ * m_ / (k_ - 1.0);
}
double Pareto::variance() const {
  if (!(k_ > 2.0)) infinite_moment("pareto second");
  return m_ * m_ * k_ / ((k_ - 1.0) * (k_ - 1.0) * (k_ - 2.0));
}
DistPtr Pareto::affine(double shift, double scale) const {
  if (shift == 0.0) {
    require(positive(scale), "affine map needs scale > 0");
    return std::make_shared<Pareto>(k_, scale * m_);
  }
  return Distribution::affine(shift, scale);
}

// ---------------------------------------------------- inverse gaussian

InverseGaussian::InverseGaussian(double mu, double k) : mu_(mu), k_(k) {
  require(positive(mu) && positive(k), "inverse gaussian needs mu > 0 and k > 0");
}
Support InverseGaussian::support() const { return {0.0, kInf}; }
double InverseGaussian::pdf(double x) const { return x <= 0.0 ? 0.0 : std::exp(log_pdf(x)); }
double InverseGaussian::log_pdf(double x) const {
  if (x <= 0.0) return kNegInf;
  const double d = x - mu_;
  return 0.5 * std::log(k_ / (2.0 * kPi * x * x * x)) - k_ * d * d / (2.0 * mu_ * mu_ * x);
}
double InverseGaussian::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  const double r = std::sqrt(k_ / x);
  const double z1 = r * (x / mu_ - 1.0);
  const double z2 = -r * (x / mu_ + 1.0);
  return numerics::normal_cdf(z1) + std::exp(2.0 * k_ / mu_ + log_normal_cdf(z2));
}

// ---------------------------------------------------------------- beta

Beta::Beta(double a, double b) : a_(a), b_(b) {
  require(positive(a) && positive(b), "beta needs a > 0 and b > 0");
  log_beta_ = log_gamma(a_) + log_gamma(b_) - log_gamma(a_ + b_);
}
Support Beta::support() const { return {0.0, 1.0}; }
double Beta::pdf(double x) const {
  if (x < 0.0 || x > 1.0) return 0.0;
  if (x == 0.0) return power_origin(a_, std::exp(-log_beta_));
  if (x == 1.0) return power_origin(b_, std::exp(-log_beta_));
  return std::exp(log_pdf(x));
}
double Beta::log_pdf(double x) const {
  if (x <= 0.0 || x >= 1.0) return std::log(pdf(x));
  return (a_ - 1.0) * std::log(x) + (b_ - 1.0) * std::log1p(-x) - log_beta_;
}
double Beta::cdf(double x) const { return numerics::beta_inc(a_, b_, std::clamp(x, 0.0, 1.0)); }
double Beta::sf(double x) const {
  return numerics::beta_inc(b_, a_, 1.0 - std::clamp(x, 0.0, 1.0));
}
double Beta::variance() const {
  const double s = a_ + b_;
  return a_ * b_ / (s * s * (s + 1.0));
}

// ------------------------------------------------------------- poisson

Poisson::Poisson(double lambda) : lambda_(lambda) {
  require(positive(lambda), "poisson needs lambda > 0");
}
Support Poisson::support() const { return {0.0, kInf, SupportKind::kLattice}; }
double Poisson::pdf(double x) const {
  if (x < 0.0 || x != std::floor(x)) return 0.0;
  return std::exp(log_pdf(x));
}
double Poisson::log_pdf(double x) const {
  if (x < 0.0 || x != std::floor(x)) return kNegInf;
  return x * std::log(lambda_) - lambda_ - log_gamma(x + 1.0);
}
double Poisson::cdf(double x) const {
  if (x < 0.0) return 0.0;
  return numerics::gamma_q(std::floor(x) + 1.0, lambda_);
}
double Poisson::sf(double x) const {
  if (x < 0.0) return 1.0;
  return numerics::gamma_p(std::floor(x) + 1.0, lambda_);
}
double Poisson::quantile(double p) const {
  check_level(p);
  if (p == 1.0) return kInf;
  double n = 0.0;
  while (cdf(n) < p) n += 1.0;
  return n;
}
double Poisson::upper_quantile(double q) const {
  check_level(q);
  if (q == 0.0) return kInf;
  double n = 0.0;
  while (sf(n) > q) n += 1.0;
  return n;
}
double Poisson::sample(Rng& rng) const { return quantile(uniform01(rng)); }
DistPtr Poisson::affine(double shift, double scale) const {
  if (shift == 0.0 && scale == 1.0) return shared_from_this();
  throw Error(ErrorCode::kUnsupported, "affine maps of lattice laws are not supported");
}

// -------------------------------------------------------------- cauchy

Cauchy::Cauchy(double mu, double sigma) : mu_(mu), sigma_(sigma) {
  require(std::isfinite(mu) && positive(sigma), "cauchy needs finite mu and sigma > 0");
}
Support Cauchy::support() const { return {kNegInf, kInf}; }
double Cauchy::pdf(double x) const {
  const double z = (x - mu_) / sigma_;
  return 1.0 / (kPi * sigma_ * (1.0 + z * z));
}
double Cauchy::log_pdf(double x) const {
  const double z = (x - mu_) / sigma_;
  return -std::log(kPi * sigma_) - std::log1p(z * z);
}
double Cauchy::cdf(double x) const {
  const double z = (x - mu_) / sigma_;
  return z < 0.0 ? std::atan(-1.0 / z) / kPi : 0.5 + std::atan(z) / kPi;
}
double Cauchy::sf(double x) const { return cdf(2.0 * mu_ - x); }
double Cauchy::quantile(double p) const {
  check_level(p);
  if (p == 0.0) return kNegInf;
  if (p == 1.0) return kInf;
  if (p < 0.25) return mu_ - sigma_ / std::tan(kPi * p);
  if (p > 0.75) return mu_ + sigma_ / std::tan(kPi * (1.0 - p));
  return mu_ + sigma_ * std::tan(kPi * (p - 0.5));
}
double Cauchy::upper_quantile(double q) const {
  check_level(q);
  return 2.0 * mu_ - quantile(q);
}
double Cauchy::mean() const { infinite_moment("cauchy first"); }
double Cauchy::variance() const { infinite_moment("cauchy second"); }
DistPtr Cauchy::affine(double shift, double scale) const {
  require(positive(scale) && std::isfinite(shift), "affine map needs scale > 0");
  return std::make_shared<Cauchy>(shift + scale * mu_, scale * sigma_);
}

// -------------------------------------------------- asymmetric laplace

AsymmetricLaplace::AsymmetricLaplace(double mu, double sigma, double p)
    : mu_(mu), sigma_(sigma), p_(p) {
  require(std::isfinite(mu) && positive(sigma) && p > 0.0 && p < 1.0,
          "asymmetric laplace needs sigma > 0 and p in (0,1)");
}
Support AsymmetricLaplace::support() const { return {kNegInf, kInf}; }
double AsymmetricLaplace::pdf(double x) const { return std::exp(log_pdf(x)); }
double AsymmetricLaplace::log_pdf(double x) const {
  const double z = (x - mu_) / sigma_;
  const double base = std::log(p_ * (1.0 - p_) / sigma_);
  return z <= 0.0 ? base + (1.0 - p_) * z : base - p_ * z;
}
double AsymmetricLaplace::cdf(double x) const {
  const double z = (x - mu_) / sigma_;
  return z <= 0.0 ? p_ * std::exp((1.0 - p_) * z) : 1.0 - (1.0 - p_) * std::exp(-p_ * z);
}
double AsymmetricLaplace::sf(double x) const {
  const double z = (x - mu_) / sigma_;
  return z <= 0.0 ? 1.0 - p_ * std::exp((1.0 - p_) * z) : (1.0 - p_) * std::exp(-p_ * z);
}
double AsymmetricLaplace::quantile(double q) const {
  check_level(q);
  if (q == 0.0) return kNegInf;
  if (q == 1.0) return kInf;
  if (q <= p_) return mu_ + sigma_ / (1.0 - p_) * std::log(q / p_);
  return mu_ - sigma_ / p_ * std::log((1.0 - q) / (1.0 - p_));
}
double AsymmetricLaplace::upper_quantile(double q) const {
  check_level(q);
  if (q == 0.0) return kInf;
  if (q <= 1.0 - p_) return mu_ - sigma_ / p_ * std::log(q / (1.0 - p_));
  return quantile(1.0 - q);
}
double AsymmetricLaplace::mean() const {
  return mu_ + sigma_ * (1.0 - 2.0 * p_) / (p_ * (1.0 - p_));
}
double AsymmetricLaplace::variance() const {
  const double q = 1.0 - p_;
  return sigma_ * sigma_ * (1.0 - 2.0 * p_ + 2.0 * p_ * p_) / (p_ * p_ * q * q);
}
DistPtr AsymmetricLaplace::affine(double shift, double scale) const {
  require(positive(scale) && std::isfinite(shift), "affine map needs scale > 0");
  return std::make_shared<AsymmetricLaplace>(shift + scale * mu_, scale * sigma_, p_);
}

// ------------------------------------------------------------- uniform

Uniform::Uniform(double a, double b) : a_(a), b_(b) {
  require(std::isfinite(a) && std::isfinite(b) && b > a, "uniform needs a < b");
}
Support Uniform::support() const { return {a_, b_}; }
double Uniform::pdf(double x) const { return (x < a_ || x > b_) ? 0.0 : 1.0 / (b_ - a_); }
double Uniform::cdf(double x) const {
  if (x <= a_) return 0.0;
  if (x >= b_) return 1.0;
  return (x - a_) / (b_ - a_);
}
double Uniform::quantile(double p) const {
  check_level(p);
  return a_ + p * (b_ - a_);
}
double Uniform::upper_quantile(double q) const {
  check_level(q);
  return b_ - q * (b_ - a_);
}
DistPtr Uniform::affine(double shift, double scale) const {
  require(positive(scale) && std::isfinite(shift), "affine map needs scale > 0");
  return std::make_shared<Uniform>(shift + scale * a_, shift + scale * b_);
}

// -------------------------------------------------------------- affine

Affine::Affine(DistPtr base, double shift, double scale)
    : base_(std::move(base)), shift_(shift), scale_(scale) {
  require(base_ != nullptr, "affine needs a base law");
  require(positive(scale) && std::isfinite(shift), "affine map needs scale > 0");
  if (base_->is_discrete()) {
    throw Error(ErrorCode::kUnsupported, "affine maps of lattice laws are not supported");
  }
}
std::vector<double> Affine::params() const {
  std::vector<double> p{shift_, scale_};
  const std::vector<double> b = base_->params();
  p.insert(p.end(), b.begin(), b.end());
  return p;
}
Support Affine::support() const {
  const Support s = base_->support();
  return {shift_ + scale_ * s.lower, shift_ + scale_ * s.upper};
}
double Affine::pdf(double x) const { return base_->pdf((x - shift_) / scale_) / scale_; }
double Affine::log_pdf(double x) const {
  return base_->log_pdf((x - shift_) / scale_) - std::log(scale_);
}
double Affine::cdf(double x) const { return base_->cdf((x - shift_) / scale_); }
double Affine::sf(double x) const { return base_->sf((x - shift_) / scale_); }
double Affine::quantile(double p) const { return shift_ + scale_ * base_->quantile(p); }
double Affine::upper_quantile(double q) const {
  return shift_ + scale_ * base_->upper_quantile(q);
}
double Affine::mean() const { return shift_ + scale_ * base_->mean(); }
double Affine::variance() const { return scale_ * scale_ * base_->variance(); }
std::vector<double> Affine::kinks() const {
  std::vector<double> k = base_->kinks();
  for (double& x : k) x = shift_ + scale_ * x;
  return k;
}
double Affine::sample(Rng& rng) const { return shift_ + scale_ * base_->sample(rng); }
DistPtr Affine::affine(double shift, double scale) const {
  require(positive(scale) && std::isfinite(shift), "affine map needs scale > 0");
  if (shift == 0.0 && scale == 1.0) return shared_from_this();
  return base_->affine(shift + scale * shift_, scale * scale_);
}
std::vector<double> Affine::compute_breakpoints() const {
  std::vector<double> pts = base_->breakpoints();
  for (double& x : pts) x = shift_ + scale_ * x;
  return pts;
}

// ------------------------------------------------------------- mixture

Mixture::Mixture(std::vector<DistPtr> components, std::vector<double> weights)
    : components_(std::move(components)), weights_(std::move(weights)) {
  require(!components_.empty() && components_.size() == weights_.size(),
          "mixture needs matching components and weights");
  double total = 0.0;
  for (double w : weights_) {
    require(w >= 0.0 && std::isfinite(w), "mixture weights must be nonnegative");
    total += w;
  }
  require(total > 0.0, "mixture weights must not all vanish");
  for (double& w : weights_) w /= total;
  for (const DistPtr& c : components_) {
    require(c != nullptr && !c->is_discrete(), "mixture components must be continuous");
  }
}
Support Mixture::support() const {
  Support s{kInf, kNegInf};
  for (const DistPtr& c : components_) {
    s.lower = std::min(s.lower, c->support().lower);
    s.upper = std::max(s.upper, c->support().upper);
  }
  return s;
}
double Mixture::pdf(double x) const {
  double f = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) f += weights_[i] * components_[i]->pdf(x);
  return f;
}
double Mixture::cdf(double x) const {
  double f = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) f += weights_[i] * components_[i]->cdf(x);
  return f;
}
double Mixture::sf(double x) const {
  double f = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) f += weights_[i] * components_[i]->sf(x);
  return f;
}
double Mixture::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) m += weights_[i] * components_[i]->mean();
  return m;
}
double Mixture::variance() const {
  const double m = mean();
  double second = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const double mi = components_[i]->mean();
    second += weights_[i] * (components_[i]->variance() + mi * mi);
  }
  return second - m * m;
}
bool Mixture::has_first_moment() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const DistPtr& c) { return c->has_first_moment(); });
}
bool Mixture::has_finite_variance() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const DistPtr& c) { return c->has_finite_variance(); });
}
std::vector<double> Mixture::kinks() const {
  std::vector<double> k;
  for (const DistPtr& c : components_) {
    const std::vector<double> ck = c->kinks();
    k.insert(k.end(), ck.begin(), ck.end());
  }
  return k;
}
double Mixture::sample(Rng& rng) const {
  const double u = uniform01(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < components_.size(); ++i) {
    acc += weights_[i];
    if (u < acc) return components_[i]->sample(rng);
  }
  return components_.back()->sample(rng);
}
std::vector<double> Mixture::compute_breakpoints() const {
  std::vector<double> pts;
  for (const DistPtr& c : components_) {
    const std::vector<double>& b = c->breakpoints();
    pts.insert(pts.end(), b.begin(), b.end());
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// ------------------------------------------------------------- factory

std::string canonical_kind(std::string_view kind) {
  std::string k;
  for (char c : kind) {
    if (c == '_' || c == ' ') c = '-';
    k.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  static const std::map<std::string, std::string> kAliases = {
      {"normal", "normal"},
      {"gaussian", "normal"},
      {"exponential", "exponential"},
      {"exp", "exponential"},
      {"laplace", "laplace"},
      {"weibull", "weibull"},
      {"gamma", "gamma"},
      {"generalized-gamma", "generalized-gamma"},
      {"gen-gamma", "generalized-gamma"},
      {"gg", "generalized-gamma"},
      {"symmetric-generalized-gamma", "symmetric-generalized-gamma"},
      {"sgg", "symmetric-generalized-gamma"},
      {"log-normal", "log-normal"},
      {"lognormal", "log-normal"},
      {"inverse-gamma", "inverse-gamma"},
      {"invgamma", "inverse-gamma"},
      {"pareto", "pareto"},
      {"inverse-gaussian", "inverse-gaussian"},
      {"wald", "inverse-gaussian"},
      {"beta", "beta"},
      {"poisson", "poisson"},
      {"cauchy", "cauchy"},
      {"asymmetric-laplace", "asymmetric-laplace"},
      {"al", "asymmetric-laplace"},
      {"uniform", "uniform"},
  };
  const auto it = kAliases.find(k);
  if (it == kAliases.end()) {
    throw Error(ErrorCode::kUnknownKind, "unknown family '" + std::string(kind) + "'");
  }
  return it->second;
}

DistPtr make_family(std::string_view kind, const std::vector<double>& params) {
  const std::string k = canonical_kind(kind);
  static const std::map<std::string, std::vector<double>> kDefaults = {
      {"normal", {0.0, 1.0}},
      {"exponential", {1.0}},
      {"laplace", {0.0, 1.0}},
      {"weibull", {1.0, 1.0}},
      {"gamma", {1.0, 1.0}},
      {"generalized-gamma", {1.0, 1.0, 1.0}},
      {"symmetric-generalized-gamma", {1.0, 2.0, 1.0}},
      {"log-normal", {0.0, 1.0}},
      {"inverse-gamma", {3.0, 1.0}},
      {"pareto", {3.0, 1.0}},
      {"inverse-gaussian", {1.0, 1.0}},
      {"beta", {1.0, 1.0}},
      {"poisson", {1.0}},
      {"cauchy", {0.0, 1.0}},
      {"asymmetric-laplace", {0.0, 1.0, 0.5}},
      {"uniform", {0.0, 1.0}},
  };
  std::vector<double> p = kDefaults.at(k);
  if (params.size() > p.size()) {
    throw Error(ErrorCode::kParameterOutOfDomain,
                k + " takes at most " + std::to_string(p.size()) + " parameters");
  }
  std::copy(params.begin(), params.end(), p.begin());
  if (k == "normal") return std::make_shared<Normal>(p[0], p[1]);
  if (k == "exponential") return std::make_shared<Exponential>(p[0]);
  if (k == "laplace") return std::make_shared<Laplace>(p[0], p[1]);
  if (k == "weibull") return std::make_shared<Weibull>(p[0], p[1]);
  if (k == "gamma") return std::make_shared<Gamma>(p[0], p[1]);
  if (k == "generalized-gamma") return std::make_shared<GeneralizedGamma>(p[0], p[1], p[2]);
  if (k == "symmetric-generalized-gamma") {
    return std::make_shared<SymmetricGeneralizedGamma>(p[0], p[1], p[2]);
  }
  if (k == "log-normal") return std::make_shared<LogNormal>(p[0], p[1]);
  if (k == "inverse-gamma") return std::make_shared<InverseGamma>(p[0], p[1]);
  if (k == "pareto") return std::make_shared<Pareto>(p[0], p[1]);
  if (k == "inverse-gaussian") return std::make_shared<InverseGaussian>(p[0], p[1]);
  if (k == "beta") return std::make_shared<Beta>(p[0], p[1]);
  if (k == "poisson") return std::make_shared<Poisson>(p[0]);
  if (k == "cauchy") return std::make_shared<Cauchy>(p[0], p[1]);
  if (k == "asymmetric-laplace") return std::make_shared<AsymmetricLaplace>(p[0], p[1], p[2]);
  return std::make_shared<Uniform>(p[0], p[1]);
}

namespace {

std::pair<std::string, std::vector<double>> split_spec(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  std::string name(spec.substr(0, colon));
  std::vector<double> values;
  if (colon != std::string_view::npos) {
    std::string rest(spec.substr(colon + 1));
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      try {
        std::size_t used = 0;
        values.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw Error(ErrorCode::kParameterOutOfDomain, "bad number '" + item + "' in " + std::string(spec));
      }
    }
  }
  return {name, values};
}

std::string strip_suffix(const std::string& name, const std::string& suffix) {
  if (name.size() > suffix.size() &&
      name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return name.substr(0, name.size() - suffix.size());
  }
  return name;
}

}  // namespace

DistPtr parse_distribution(std::string_view spec) {
  auto [name, values] = split_spec(spec);
  return make_family(name, values);
}

std::vector<double> merged_breakpoints(const Distribution& a, const Distribution& b) {
  std::vector<double> pts = a.breakpoints();
  const std::vector<double>& other = b.breakpoints();
  pts.insert(pts.end(), other.begin(), other.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

ScaleFamily::ScaleFamily(DistPtr base, std::string name)
    : base_(std::move(base)), name_(std::move(name)) {
  require(base_ != nullptr, "scale family needs a base law");
  if (name_.empty()) name_ = base_->kind() + "-scale";
}

DistPtr ScaleFamily::member(double sigma) const {
  require(positive(sigma), "scale family member needs sigma > 0");
  return base_->affine(0.0, sigma);
}

LocationFamily::LocationFamily(DistPtr base, std::string name)
    : base_(std::move(base)), name_(std::move(name)) {
  require(base_ != nullptr, "location family needs a base law");
  if (name_.empty()) name_ = base_->kind() + "-location";
}

DistPtr LocationFamily::member(double mu) const {
  require(std::isfinite(mu), "location family member needs finite mu");
  return base_->affine(mu, 1.0);
}

ScaleFamily parse_scale_family(std::string_view spec) {
  auto [name, values] = split_spec(spec);
  const std::string kind = strip_suffix(name, "-scale");
  return ScaleFamily(make_family(kind, values), canonical_kind(kind) + "-scale");
}

LocationFamily parse_location_family(std::string_view spec) {
  auto [name, values] = split_spec(spec);
  const std::string kind = strip_suffix(name, "-location");
  return LocationFamily(make_family(kind, values), canonical_kind(kind) + "-location");
}

}  // namespace asymscore::families

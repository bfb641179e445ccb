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

#include "asymscore/expfam.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

#include "asymscore/error.hpp"
#include "asymscore/special.hpp"

namespace asymscore::families {

namespace {

using numerics::digamma;
using numerics::log_gamma;
using numerics::trigamma;

std::vector<double> with_defaults(const std::string& kind, std::vector<double> defaults,
                                  const std::vector<double>& given) {
  if (given.size() > defaults.size()) {
    throw Error(ErrorCode::kParameterOutOfDomain,
                kind + " takes " + std::to_string(defaults.size()) + " fixed parameters");
  }
  for (std::size_t i = 0; i < given.size(); ++i) defaults[i] = given[i];
  for (double v : defaults) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kParameterOutOfDomain, kind + " parameter");
  }
  return defaults;
}

void require_positive(const std::string& kind, double v) {
  if (!(v > 0.0)) throw Error(ErrorCode::kParameterOutOfDomain, kind + " needs positive parameters");
}

// Scale family of a generalized gamma law with eta = sigma^-gamma and
// A(eta) = -(k/gamma) log eta. The member builder receives sigma.
ExpFamDescriptor::Parts power_scale(std::string kind, std::vector<double> fixed, double gamma,
                                    double k, std::function<double(double)> T,
                                    std::function<DistPtr(double)> from_sigma) {
  const double c = k / gamma;
  ExpFamDescriptor::Parts p;
  p.kind = std::move(kind);
  p.fixed = std::move(fixed);
  p.omega = Omega::kPositive;
  p.conventional = "sigma";
  p.T = std::move(T);
  p.A = [c](double eta) { return -c * std::log(eta); };
  p.dA = [c](double eta) { return -c / eta; };
  p.d2A = [c](double eta) { return c / (eta * eta); };
  p.to_natural = [gamma](double sigma) { return std::pow(sigma, -gamma); };
  p.from_natural = [gamma](double eta) { return std::pow(eta, -1.0 / gamma); };
  p.member = [gamma, from_sigma](double eta) { return from_sigma(std::pow(eta, -1.0 / gamma)); };
  return p;
}

}  // namespace

ExpFamDescriptor::ExpFamDescriptor(Parts parts) : parts_(std::move(parts)) {}

bool ExpFamDescriptor::in_omega(double eta) const {
  if (!std::isfinite(eta)) return false;
  return parts_.omega == Omega::kReal || eta > 0.0;
}

void ExpFamDescriptor::check(double eta) const {
  if (!in_omega(eta)) {
    std::ostringstream msg;
    msg << parts_.kind << ": natural parameter " << eta << " outside omega";
    throw Error(ErrorCode::kParameterOutOfDomain, msg.str());
  }
}

double ExpFamDescriptor::logA(double eta) const {
  check(eta);
  return parts_.A(eta);
}
double ExpFamDescriptor::dA(double eta) const {
  check(eta);
  return parts_.dA(eta);
}
double ExpFamDescriptor::d2A(double eta) const {
  check(eta);
  return parts_.d2A(eta);
}
double ExpFamDescriptor::to_natural(double conventional) const {
  const double eta = parts_.to_natural(conventional);
  check(eta);
  return eta;
}
double ExpFamDescriptor::from_natural(double eta) const {
  check(eta);
  return parts_.from_natural(eta);
}
DistPtr ExpFamDescriptor::member(double eta) const {
  check(eta);
  return parts_.member(eta);
}

double ExpFamDescriptor::bregman(double eta1, double eta2) const {
  check(eta1);
  check(eta2);
  if (eta1 == eta2) return 0.0;
  return parts_.A(eta1) - parts_.A(eta2) - parts_.dA(eta2) * (eta1 - eta2);
}

double ExpFamDescriptor::dA_inverse(double m) const {
  if (!std::isfinite(m)) {
    throw Error(ErrorCode::kExpectationOutsideRange, parts_.kind + ": non-finite expectation");
  }
  const auto outside = [&] {
    std::ostringstream msg;
    msg << parts_.kind << ": " << m << " is outside the image of A'";
    throw Error(ErrorCode::kExpectationOutsideRange, msg.str());
  };
  const bool positive = parts_.omega == Omega::kPositive;
  double lo = 1.0;
  double hi = 1.0;
  double step = 1.0;
  int guard = 0;
  while (parts_.dA(lo) > m) {
    hi = lo;
    if (positive) {
      lo *= 0.5;
    } else {
      lo -= step;
      step *= 2.0;
    }
    if (++guard > 2000 || (positive && lo < 1e-300) || !std::isfinite(lo)) outside();
  }
  step = 1.0;
  while (parts_.dA(hi) < m) {
    lo = hi;
    if (positive) {
      hi *= 2.0;
    } else {
      hi += step;
      step *= 2.0;
    }
    if (++guard > 4000 || !std::isfinite(hi) || hi > 1e300) outside();
  }
  for (int iter = 0; iter < 300; ++iter) {
    const double mid = (positive && hi > 4.0 * lo) ? std::sqrt(lo * hi) : lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;
    if (parts_.dA(mid) < m) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-16 * std::max(std::abs(lo), std::abs(hi))) break;
  }
  // One Newton step from the bracket midpoint.
  double eta = 0.5 * (lo + hi);
  const double step_n = (parts_.dA(eta) - m) / parts_.d2A(eta);
  if (std::isfinite(step_n) && eta - step_n >= lo && eta - step_n <= hi) eta -= step_n;
  return eta;
}

const std::vector<std::string>& expfam_catalog() {
  static const std::vector<std::string> kCatalog = {
      "generalized-gamma-scale", "generalized-gamma-shape", "gamma-scale",
      "exponential-scale",       "weibull-scale",           "laplace-scale",
      "normal-scale",            "log-normal-scale",        "inverse-gamma-scale",
      "pareto-shape",            "inverse-gaussian-shape",  "beta-shape",
      "poisson-rate"};
  return kCatalog;
}

ExpFamDescriptor expfam_descriptor(std::string_view kind_in, const std::vector<double>& fixed) {
  std::string kind;
  for (char c : kind_in) kind.push_back(c == '_' ? '-' : static_cast<char>(std::tolower(c)));
  static const std::map<std::string, std::string> kAliases = {
      {"gg-scale", "generalized-gamma-scale"},
      {"gg-shape", "generalized-gamma-shape"},
      {"lognormal-scale", "log-normal-scale"},
      {"invgamma-scale", "inverse-gamma-scale"},
      {"poisson", "poisson-rate"},
  };
  if (auto it = kAliases.find(kind); it != kAliases.end()) kind = it->second;

  if (kind == "generalized-gamma-scale") {
    const auto f = with_defaults(kind, {2.0, 3.0}, fixed);  // gamma, k
    require_positive(kind, f[0]);
    require_positive(kind, f[1]);
    const double gamma = f[0];
    const double k = f[1];
    return ExpFamDescriptor(power_scale(
        kind, f, gamma, k, [gamma](double x) { return -std::pow(x, gamma); },
        [gamma, k](double sigma) { return std::make_shared<GeneralizedGamma>(sigma, gamma, k); }));
  }
  if (kind == "gamma-scale") {
    const auto f = with_defaults(kind, {3.0}, fixed);  // k
    require_positive(kind, f[0]);
    const double k = f[0];
    return ExpFamDescriptor(power_scale(
        kind, f, 1.0, k, [](double x) { return -x; },
        [k](double sigma) { return std::make_shared<Gamma>(k, sigma); }));
  }
  if (kind == "exponential-scale") {
    const auto f = with_defaults(kind, {}, fixed);
    return ExpFamDescriptor(power_scale(
        kind, f, 1.0, 1.0, [](double x) { return -x; },
        [](double sigma) { return std::make_shared<Exponential>(sigma); }));
  }
  if (kind == "weibull-scale") {
    const auto f = with_defaults(kind, {2.0}, fixed);  // k
    require_positive(kind, f[0]);
    const double k = f[0];
    return ExpFamDescriptor(power_scale(
        kind, f, k, k, [k](double x) { return -std::pow(x, k); },
        [k](double sigma) { return std::make_shared<Weibull>(k, sigma); }));
  }
  if (kind == "laplace-scale") {
    const auto f = with_defaults(kind, {}, fixed);
    return ExpFamDescriptor(power_scale(
        kind, f, 1.0, 1.0, [](double x) { return -std::abs(x); },
        [](double b) { return std::make_shared<Laplace>(0.0, b); }));
  }
  if (kind == "normal-scale") {
    // Symmetrized generalized gamma with gamma = 2, k = 1: its scale is
    // sqrt(2) times the standard deviation, so eta = 1 / (2 s^2).
    const auto f = with_defaults(kind, {}, fixed);
    ExpFamDescriptor::Parts p;
    p.kind = kind;
    p.fixed = f;
    p.omega = Omega::kPositive;
    p.conventional = "sd";
    p.T = [](double x) { return -x * x; };
    p.A = [](double eta) { return -0.5 * std::log(eta); };
    p.dA = [](double eta) { return -0.5 / eta; };
    p.d2A = [](double eta) { return 0.5 / (eta * eta); };
    p.to_natural = [](double s) { return 0.5 / (s * s); };
    p.from_natural = [](double eta) { return std::sqrt(0.5 / eta); };
    p.member = [](double eta) { return std::make_shared<Normal>(0.0, std::sqrt(0.5 / eta)); };
    return ExpFamDescriptor(std::move(p));
  }
  if (kind == "log-normal-scale") {
    const auto f = with_defaults(kind, {0.0}, fixed);  // mu
    const double mu = f[0];
    ExpFamDescriptor::Parts p;
    p.kind = kind;
    p.fixed = f;
    p.omega = Omega::kPositive;
    p.conventional = "sigma";
    p.T = [mu](double x) {
      const double d = std::log(x) - mu;
      return -0.5 * d * d;
    };
    p.A = [](double eta) { return -0.5 * std::log(eta); };
    p.dA = [](double eta) { return -0.5 / eta; };
    p.d2A = [](double eta) { return 0.5 / (eta * eta); };
    p.to_natural = [](double sigma) { return 1.0 / (sigma * sigma); };
    p.from_natural = [](double eta) { return 1.0 / std::sqrt(eta); };
    p.member = [mu](double eta) { return std::make_shared<LogNormal>(mu, 1.0 / std::sqrt(eta)); };
    return ExpFamDescriptor(std::move(p));
  }
  if (kind == "inverse-gamma-scale") {
    const auto f = with_defaults(kind, {3.0}, fixed);  // k
    require_positive(kind, f[0]);
    const double k = f[0];
    ExpFamDescriptor::Parts p;
    p.kind = kind;
    p.fixed = f;
    p.omega = Omega::kPositive;
    p.conventional = "sigma";
    p.T = [](double x) { return -1.0 / x; };
    p.A = [k](double eta) { return -k * std::log(eta); };
    p.dA = [k](double eta) { return -k / eta; };
    p.d2A = [k](double eta) { return k / (eta * eta); };
    p.to_natural = [](double sigma) { return sigma; };
    p.from_natural = [](double eta) { return eta; };
    p.member = [k](double eta) { return std::make_shared<InverseGamma>(k, eta); };
    return ExpFamDescriptor(std::move(p));
  }
  if (kind == "generalized-gamma-shape" || kind == "gamma-shape") {
    // gamma-shape is the gamma = 1 member of the generalized gamma shape family.
    const bool plain = kind == "gamma-shape";
    const auto f = plain ? with_defaults(kind, {1.0}, fixed)  // sigma
                         : with_defaults(kind, {1.0, 2.0}, fixed);  // sigma, gamma
    const double sigma = f[0];
    const double gamma = plain ? 1.0 : f[1];
    require_positive(kind, sigma);
    require_positive(kind, gamma);
    ExpFamDescriptor::Parts p;
    p.kind = kind;
    p.fixed = f;
    p.omega = Omega::kPositive;
    p.conventional = "k";
    p.T = [](double x) { return std::log(x); };
    p.A = [sigma, gamma](double eta) { return eta * std::log(sigma) + log_gamma(eta / gamma); };
    p.dA = [sigma, gamma](double eta) { return std::log(sigma) + digamma(eta / gamma) / gamma; };
    p.d2A = [gamma](double eta) { return trigamma(eta / gamma) / (gamma * gamma); };
    p.to_natural = [](double k) { return k; };
    p.from_natural = [](double eta) { return eta; };
    p.member = [sigma, gamma](double eta) {
      return std::make_shared<GeneralizedGamma>(sigma, gamma, eta);
    };
    return ExpFamDescriptor(std::move(p));
  }
  if (kind == "pareto-shape") {
    const auto f = with_defaults(kind, {1.0}, fixed);  // m
    require_positive(kind, f[0]);
    const double m = f[0];
    ExpFamDescriptor::Parts p;
    p.kind = kind;
    p.fixed = f;
    p.omega = Omega::kPositive;
    p.conventional = "k";
    p.T = [](double x) { return -std::log(x); };
    p.A = [m](double eta) { return -std::log(eta) - eta * std::log(m); };
    p.dA = [m](double eta) { return -1.0 / eta - std::log(m); };
    p.d2A = [](double eta) { return 1.0 / (eta * eta); };
    p.to_natural = [](double k) { return k; };
    p.from_natural = [](double eta) { return eta; };
    p.member = [m](double eta) { return std::make_shared<Pareto>(eta, m); };
    return ExpFamDescriptor(std::move(p));
  }
  if (kind == "inverse-gaussian-shape") {
    const auto f = with_defaults(kind, {1.0}, fixed);  // mu
    require_positive(kind, f[0]);
    const double mu = f[0];
    ExpFamDescriptor::Parts p;
    p.kind = kind;
    p.fixed = f;
    p.omega = Omega::kPositive;
    p.conventional = "k";
    p.T = [mu](double x) { return -(x - mu) * (x - mu) / (2.0 * mu * mu * x); };
    p.A = [](double eta) { return -0.5 * std::log(eta); };
    p.dA = [](double eta) { return -0.5 / eta; };
    p.d2A = [](double eta) { return 0.5 / (eta * eta); };
    p.to_natural = [](double k) { return k; };
    p.from_natural = [](double eta) { return eta; };
    p.member = [mu](double eta) { return std::make_shared<InverseGaussian>(mu, eta); };
    return ExpFamDescriptor(std::move(p));
  }
  if (kind == "beta-shape") {
    const auto f = with_defaults(kind, {2.0}, fixed);  // beta
    require_positive(kind, f[0]);
    const double b = f[0];
    ExpFamDescriptor::Parts p;
    p.kind = kind;
    p.fixed = f;
    p.omega = Omega::kPositive;
    p.conventional = "alpha";
    p.T = [](double x) { return std::log(x); };
    p.A = [b](double eta) { return log_gamma(eta) + log_gamma(b) - log_gamma(eta + b); };
    p.dA = [b](double eta) { return digamma(eta) - digamma(eta + b); };
    p.d2A = [b](double eta) { return trigamma(eta) - trigamma(eta + b); };
    p.to_natural = [](double a) { return a; };
    p.from_natural = [](double eta) { return eta; };
    p.member = [b](double eta) { return std::make_shared<Beta>(eta, b); };
    return ExpFamDescriptor(std::move(p));
  }
  if (kind == "poisson-rate") {
    const auto f = with_defaults(kind, {}, fixed);
    ExpFamDescriptor::Parts p;
    p.kind = kind;
    p.fixed = f;
    p.omega = Omega::kReal;
    p.conventional = "lambda";
    p.T = [](double x) { return x; };
    p.A = [](double eta) { return std::exp(eta); };
    p.dA = [](double eta) { return std::exp(eta); };
    p.d2A = [](double eta) { return std::exp(eta); };
    p.to_natural = [](double lambda) { return std::log(lambda); };
    p.from_natural = [](double eta) { return std::exp(eta); };
    p.member = [](double eta) { return std::make_shared<Poisson>(std::exp(eta)); };
    return ExpFamDescriptor(std::move(p));
  }
  throw Error(ErrorCode::kUnknownKind,
              "'" + std::string(kind_in) + "' is not an exponential-family catalog entry");
}

ExpFamDescriptor parse_expfam(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  std::vector<double> fixed;
  if (colon != std::string_view::npos) {
    std::stringstream ss{std::string(spec.substr(colon + 1))};
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      try {
        fixed.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw Error(ErrorCode::kParameterOutOfDomain, "bad number '" + item + "'");
      }
    }
  }
  return expfam_descriptor(spec.substr(0, colon), fixed);
}

}  // namespace asymscore::families

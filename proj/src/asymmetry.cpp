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

#include "asymscore/asymmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "asymscore/error.hpp"

namespace asymscore::asymmetry {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double expected_from(const LossSpec& spec, const DistPtr& F, const DistPtr& G) {
  return divergence::div(spec, F, G).value;
}

}  // namespace

std::string to_string(Comparison c) {
  switch (c) {
    case Comparison::kOverPenalized: return "over_penalized";
    case Comparison::kUnderPenalized: return "under_penalized";
    case Comparison::kSymmetric: return "symmetric";
  }
  return "unknown";
}

std::string to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::kIncreasing: return "increasing";
    case Monotonicity::kDecreasing: return "decreasing";
    case Monotonicity::kConstant: return "constant";
    case Monotonicity::kMixed: return "mixed";
  }
  return "unknown";
}

AsymmetryVerdict classify(double d_lhs, double d_rhs, double self_loss, double rel_tol) {
  AsymmetryVerdict v;
  v.d_lhs = d_lhs;
  v.d_rhs = d_rhs;
  v.lhs = d_lhs + self_loss;
  v.rhs = d_rhs + self_loss;
  if (std::isinf(d_lhs) && std::isinf(d_rhs)) {
    v.comparison = Comparison::kSymmetric;
    v.margin = 0.0;
    v.tolerance = 0.0;
    v.note = "both sides infinite";
    return v;
  }
  v.margin = std::fabs(d_lhs - d_rhs);
  v.tolerance = rel_tol * std::max({std::fabs(d_lhs), std::fabs(d_rhs), 1e-12});
  if (v.margin <= v.tolerance) {
    v.comparison = Comparison::kSymmetric;
  } else {
    v.comparison = d_lhs > d_rhs ? Comparison::kOverPenalized : Comparison::kUnderPenalized;
  }
  return v;
}

double scaling_exponent(const LossSpec& spec) {
  spec.validate();
  switch (spec.tag) {
    case scoring::LossTag::kCrps: return 1.0;
    case scoring::LossTag::kEnergy: return spec.beta;
    case scoring::LossTag::kQuadratic: return -1.0;
    case scoring::LossTag::kLog:
    case scoring::LossTag::kDs: return 0.0;
    case scoring::LossTag::kTwCrps:
      if (spec.weight.is_power()) return spec.weight.alpha() + 1.0;
      break;
    case scoring::LossTag::kSpherical:
      break;
  }
  throw Error(ErrorCode::kUnsupported, "loss '" + spec.describe() + "' is not rescalable");
}

ScalingFit fit_scaling_exponent(const LossSpec& spec, const DistPtr& F, const DistPtr& G,
                                const std::vector<double>& sigmas) {
  ScalingFit fit;
  fit.sigmas = sigmas;
  const double base = divergence::div(spec, F, G).value;
  if (!(base > 0.0) || !std::isfinite(base)) {
    throw Error(ErrorCode::kDataError, "scaling fit needs a finite positive divergence");
  }
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  for (double s : sigmas) {
    const double r = divergence::div(spec, F->affine(0.0, s), G->affine(0.0, s)).value / base;
    fit.ratios.push_back(r);
    const double x = std::log(s);
    const double y = std::log(r);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(sigmas.size());
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

AsymmetryVerdict scale_verdict(const LossSpec& spec, const families::ScaleFamily& family,
                               double sigma) {
  if (!(sigma > 1.0)) throw Error(ErrorCode::kParameterOutOfDomain, "scale verdict needs sigma > 1");
  const DistPtr G = family.member(1.0);
  const double up = expected_from(spec, family.member(sigma), G);
  const double down = expected_from(spec, family.member(1.0 / sigma), G);
  return classify(up, down, divergence::expected_loss(spec, G, G));
}

bool has_symmetric_density(const families::Distribution& base) {
  const double c = base.quantile(0.5);
  const double spread = base.quantile(0.75) - base.quantile(0.25);
  for (int k = 1; k <= 16; ++k) {
    const double t = spread * 0.25 * k;
    const double a = base.pdf(c + t);
    const double b = base.pdf(c - t);
    if (std::fabs(a - b) > 1e-9 * std::max({a, b, 1e-300})) return false;
  }
  return true;
}

AsymmetryVerdict location_verdict(const LossSpec& spec, const families::LocationFamily& family,
                                  double mu) {
  const DistPtr G = family.member(0.0);
  const double up = expected_from(spec, family.member(mu), G);
  const double down = expected_from(spec, family.member(-mu), G);
  double self = 0.0;
  try {
    self = divergence::expected_loss(spec, G, G);
  } catch (const Error&) {
    self = 0.0;
  }
  AsymmetryVerdict v = classify(up, down, std::isfinite(self) ? self : 0.0);
  if (spec.tag == scoring::LossTag::kLog && !has_symmetric_density(*family.base())) {
    v.flagged = true;
    v.note = to_string(ErrorCode::kAsymmetricBaseForLogLoss);
  }
  return v;
}

Monotonicity classify_monotonicity(const std::vector<double>& values) {
  int up = 0;
  int down = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double d = values[i] - values[i - 1];
    if (std::fabs(d) < 1e-10) continue;
    (d > 0.0 ? up : down) += 1;
  }
  if (up == 0 && down == 0) return Monotonicity::kConstant;
  if (down == 0) return Monotonicity::kIncreasing;
  if (up == 0) return Monotonicity::kDecreasing;
  return Monotonicity::kMixed;
}

ExpFamVerdict expfam_verdict(const families::ExpFamDescriptor& desc, double eta, double theta) {
  ExpFamVerdict out;
  std::vector<double> probe;
  if (desc.omega() == families::Omega::kPositive) {
    if (!(theta > 1.0)) {
      throw Error(ErrorCode::kParameterOutOfDomain, "theta must exceed 1 on (0, inf)");
    }
    out.verdict = classify(desc.bregman(theta * eta, eta), desc.bregman(eta / theta, eta));
    const double lo = std::log(eta / theta);
    const double hi = std::log(eta * theta);
    for (int i = 0; i < 64; ++i) {
      const double u = std::exp(lo + (hi - lo) * i / 63.0);
      probe.push_back(u * u * u * desc.d2A(u));
    }
  } else {
    if (!(theta > 0.0)) throw Error(ErrorCode::kParameterOutOfDomain, "theta must be positive");
    out.verdict = classify(desc.bregman(eta + theta, eta), desc.bregman(eta - theta, eta));
    for (int i = 0; i < 64; ++i) {
      const double u = theta * i / 63.0;
      probe.push_back(desc.d2A(eta + u) - desc.d2A(eta - u));
    }
  }
  out.probe = classify_monotonicity(probe);
  return out;
}

AsymmetryVerdict expfam_conventional_verdict(const families::ExpFamDescriptor& desc,
                                             double conventional, double theta) {
  if (!(theta > 1.0)) throw Error(ErrorCode::kParameterOutOfDomain, "theta must exceed 1");
  const double eta = desc.to_natural(conventional);
  const double up = desc.to_natural(conventional * theta);
  const double down = desc.to_natural(conventional / theta);
  return classify(desc.bregman(up, eta), desc.bregman(down, eta));
}

std::pair<double, double> loss_diff_root(const families::ExpFamDescriptor& desc, double eta,
                                         double eta2) {
  if (desc.omega() != families::Omega::kPositive || !(eta > 0.0) || !(eta2 > 0.0)) {
    throw Error(ErrorCode::kParameterOutOfDomain, "roots need eta, eta2 > 0 on (0, inf)");
  }
  // A = c1 log eta + c2 exactly when eta^2 A''(eta) is constant.
  const double ref = eta * eta * desc.d2A(eta);
  for (double f : {0.25, 0.5, 2.0, 4.0}) {
    const double u = eta * f;
    if (std::fabs(u * u * desc.d2A(u) - ref) > 1e-9 * std::fabs(ref)) {
      throw Error(ErrorCode::kNotLogAffinePartition,
                  "log-partition of " + desc.kind() + " is not affine in log eta");
    }
  }
  const double r = eta2 / eta;
  if (r == 1.0) return {eta2, eta2};
  const double x = -r * std::exp(-r);
  // The branch recovering r is the one on r's side of 1; use the other.
  const auto branch =
      r > 1.0 ? numerics::LambertBranch::kPrincipal : numerics::LambertBranch::kMinusOne;
  return {eta2, -eta * numerics::lambert_w(branch, x)};
}

AsymmetryVerdict power_crps_trichotomy(double alpha, TrichotomyMode mode,
                                       const families::ScaleFamily* scale_family,
                                       const families::LocationFamily* location_family,
                                       double param) {
  const LossSpec spec = LossSpec::twcrps(scoring::WeightFunction::power(alpha));
  if (mode == TrichotomyMode::kScale) {
    if (!scale_family) throw Error(ErrorCode::kDataError, "scale mode needs a scale family");
    if (scale_family->base()->support().lower < 0.0) {
      throw Error(ErrorCode::kNegativeSupportPowerWeight, "scale mode needs a positive support");
    }
    const DistPtr G = scale_family->member(1.0);
    return classify(expected_from(spec, scale_family->member(param), G),
                    expected_from(spec, scale_family->member(1.0 / param), G));
  }
  if (!location_family) throw Error(ErrorCode::kDataError, "location mode needs a location family");
  const DistPtr G = location_family->member(0.0);
  return classify(expected_from(spec, location_family->member(param), G),
                  expected_from(spec, location_family->member(-param), G));
}

}  // namespace asymscore::asymmetry

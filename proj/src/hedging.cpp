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

#include "asymscore/hedging.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "asymscore/divergence.hpp"
#include "asymscore/error.hpp"
#include "asymscore/quadrature.hpp"
#include "asymscore/special.hpp"

namespace asymscore::hedging {

namespace {

constexpr int kNodes = 64;
constexpr double kBracket = 16.0;
constexpr double kLogTol = 1e-6;

double parse_number(std::string_view s, std::string_view what) {
  const std::string str(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != str.size() || str.empty()) {
    throw Error(ErrorCode::kDataError, "bad " + std::string(what) + " '" + str + "'");
  }
  return v;
}

bool rescalable(const LossSpec& spec) {
  switch (spec.tag) {
    case scoring::LossTag::kCrps:
    case scoring::LossTag::kEnergy:
    case scoring::LossTag::kQuadratic:
      return true;
    case scoring::LossTag::kTwCrps:
      return spec.weight.is_power();
    default:
      return false;
  }
}

void require_rescalable(const LossSpec& spec) {
  if (!rescalable(spec)) {
    throw Error(ErrorCode::kNotSymmetricRescalable,
                "loss '" + spec.describe() + "' does not induce a symmetric rescalable divergence");
  }
}

std::vector<Node> nodes_for(const families::ExpFamDescriptor& desc, const ShiftLaw& shift) {
  return desc.omega() == families::Omega::kPositive ? multiplicative_nodes(shift)
                                                     : additive_nodes(shift);
}

}  // namespace

ShiftLaw ShiftLaw::two_point(double a, double center) {
  return ShiftLaw{Form::kTwoPoint, a, center};
}
ShiftLaw ShiftLaw::log_uniform(double a, double center) {
  return ShiftLaw{Form::kLogUniform, a, center};
}
ShiftLaw ShiftLaw::log_normal(double s, double center) {
  return ShiftLaw{Form::kLogNormal, s, center};
}

std::string ShiftLaw::describe() const {
  const char* name = form == Form::kTwoPoint     ? "two-point"
                     : form == Form::kLogUniform ? "log-uniform"
                                                 : "log-normal";
  char buf[96];
  if (center == 1.0) {
    std::snprintf(buf, sizeof buf, "%s:%.12g", name, spread);
  } else {
    std::snprintf(buf, sizeof buf, "%s:%.12g@%.12g", name, spread, center);
  }
  return buf;
}

ShiftLaw parse_shift_law(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::kDataError, "shift law needs 'form:value', got '" + std::string(text) + "'");
  }
  const std::string_view form = text.substr(0, colon);
  std::string_view rest = text.substr(colon + 1);
  double center = 1.0;
  if (const auto at = rest.find('@'); at != std::string_view::npos) {
    center = parse_number(rest.substr(at + 1), "shift center");
    rest = rest.substr(0, at);
  }
  const double v = parse_number(rest, "shift spread");
  if (form == "two-point") return ShiftLaw::two_point(v, center);
  if (form == "log-uniform") return ShiftLaw::log_uniform(v, center);
  if (form == "log-normal") return ShiftLaw::log_normal(v, center);
  throw Error(ErrorCode::kUnknownKind, "unknown shift law '" + std::string(form) + "'");
}

std::vector<Node> multiplicative_nodes(const ShiftLaw& law) {
  if (!(law.center > 0.0)) {
    throw Error(ErrorCode::kParameterOutOfDomain, "multiplicative shift needs center > 0");
  }
  std::vector<Node> out;
  const double lc = std::log(law.center);
  switch (law.form) {
    case ShiftLaw::Form::kTwoPoint:
      if (!(law.spread > 1.0)) throw Error(ErrorCode::kNotAShift, "two-point shift needs a > 1");
      out.push_back({law.center * law.spread, 0.5});
      out.push_back({law.center / law.spread, 0.5});
      break;
    case ShiftLaw::Form::kLogUniform: {
      if (!(law.spread > 1.0)) throw Error(ErrorCode::kNotAShift, "log-uniform shift needs a > 1");
      const double half = std::log(law.spread);
      const auto& rule = numerics::gauss_legendre(kNodes);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        out.push_back({std::exp(lc + half * rule.nodes[i]), 0.5 * rule.weights[i]});
      }
      break;
    }
    case ShiftLaw::Form::kLogNormal: {
      if (!(law.spread > 0.0)) throw Error(ErrorCode::kNotAShift, "log-normal shift needs s > 0");
      const auto& rule = numerics::gauss_hermite(kNodes);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        out.push_back({std::exp(lc + numerics::kSqrt2 * law.spread * rule.nodes[i]),
                       rule.weights[i] / numerics::kSqrtPi});
      }
      break;
    }
  }
  return out;
}

std::vector<Node> additive_nodes(const ShiftLaw& law) {
  if (!(law.spread > 0.0)) throw Error(ErrorCode::kNotAShift, "additive shift needs a > 0");
  std::vector<Node> out;
  switch (law.form) {
    case ShiftLaw::Form::kTwoPoint:
      out.push_back({law.center + law.spread, 0.5});
      out.push_back({law.center - law.spread, 0.5});
      break;
    case ShiftLaw::Form::kLogUniform: {
      const auto& rule = numerics::gauss_legendre(kNodes);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        out.push_back({law.center + law.spread * rule.nodes[i], 0.5 * rule.weights[i]});
      }
      break;
    }
    case ShiftLaw::Form::kLogNormal: {
      const auto& rule = numerics::gauss_hermite(kNodes);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        out.push_back({law.center + numerics::kSqrt2 * law.spread * rule.nodes[i],
                       rule.weights[i] / numerics::kSqrtPi});
      }
      break;
    }
  }
  return out;
}

std::string to_string(Direction d) {
  switch (d) {
    case Direction::kInflate: return "inflate";
    case Direction::kDeflate: return "deflate";
    case Direction::kNone: return "none";
    case Direction::kIndeterminate: return "indeterminate";
  }
  return "unknown";
}

double shifted_expected_loss(const LossSpec& spec, const families::ScaleFamily& family,
                             const ShiftLaw& shift, double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::kParameterOutOfDomain, "sigma must be positive");
  const auto F = family.member(sigma);
  double total = 0.0;
  for (const Node& n : multiplicative_nodes(shift)) {
    total += n.weight * divergence::expected_loss(spec, F, family.member(n.value));
  }
  return total;
}

DirectionEvidence hedge_scale_direction(const LossSpec& spec, const families::ScaleFamily& family) {
  require_rescalable(spec);
  const double gamma = asymmetry::scaling_exponent(spec);
  const auto G = family.member(1.0);
  DirectionEvidence ev;
  constexpr int kGrid = 48;
  const double lo = std::log(1.05);
  const double hi = std::log(8.0);
  for (int i = 0; i < kGrid; ++i) {
    const double s = std::exp(lo + (hi - lo) * i / (kGrid - 1));
    const double f = divergence::div(spec, family.member(s), G).value;
    ev.sigmas.push_back(s);
    ev.ratios.push_back((std::pow(s, gamma) - 1.0) / f);
  }
  ev.monotonicity = asymmetry::classify_monotonicity(ev.ratios);
  switch (ev.monotonicity) {
    case asymmetry::Monotonicity::kIncreasing: ev.direction = Direction::kDeflate; break;
    case asymmetry::Monotonicity::kDecreasing: ev.direction = Direction::kInflate; break;
    default: ev.direction = Direction::kIndeterminate; break;
  }
  return ev;
}

HedgeResult optimal_scale(const LossSpec& spec, const families::ScaleFamily& family,
                          const ShiftLaw& shift) {
  require_rescalable(spec);
  const double c = shift.center;
  auto f = [&](double log_s) { return shifted_expected_loss(spec, family, shift, std::exp(log_s)); };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double lo0 = std::log(c / kBracket);
  const double hi0 = std::log(c * kBracket);
  double a = lo0;
  double b = hi0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  int iterations = 0;
  while (b - a > kLogTol) {
    if (++iterations > 200) throw Error(ErrorCode::kNonConvergence, "golden-section search stalled");
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  HedgeResult out;
  const double best = f1 <= f2 ? x1 : x2;
  out.optimum = std::exp(best);
  out.optimum_conventional = out.optimum;
  out.hedged_loss = std::min(f1, f2);
  out.baseline_loss = f(std::log(c));
  out.at_boundary = best - lo0 < 2.0 * kLogTol || hi0 - best < 2.0 * kLogTol;
  if (out.hedged_loss >= out.baseline_loss) {
    out.optimum = c;
    out.optimum_conventional = c;
    out.hedged_loss = out.baseline_loss;
  }
  const double rel = std::log(out.optimum / c);
  out.direction = rel > kLogTol ? Direction::kInflate
                  : rel < -kLogTol ? Direction::kDeflate
                                   : Direction::kNone;
  return out;
}

double expfam_expected_divergence(const families::ExpFamDescriptor& desc, const ShiftLaw& shift,
                                  double eta) {
  double total = 0.0;
  for (const Node& n : nodes_for(desc, shift)) total += n.weight * desc.bregman(eta, n.value);
  return total;
}

HedgeResult hedge_expfam_optimum(const families::ExpFamDescriptor& desc, const ShiftLaw& shift) {
  double mean_dA = 0.0;
  for (const Node& n : nodes_for(desc, shift)) mean_dA += n.weight * desc.dA(n.value);
  if (!std::isfinite(mean_dA)) {
    throw Error(ErrorCode::kExpectationOutsideRange, "E A'(eta_test) is not finite");
  }
  HedgeResult out;
  out.optimum = desc.dA_inverse(mean_dA);
  out.optimum_conventional = desc.from_natural(out.optimum);
  out.baseline_loss = expfam_expected_divergence(desc, shift, shift.center);
  out.hedged_loss = expfam_expected_divergence(desc, shift, out.optimum);
  const double c = desc.from_natural(shift.center);
  const double gap = out.optimum_conventional - c;
  const double tol = 1e-9 * std::max(1.0, std::fabs(c));
  out.direction = gap > tol ? Direction::kInflate : gap < -tol ? Direction::kDeflate : Direction::kNone;
  return out;
}

}  // namespace asymscore::hedging

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

#include "asymscore/scoring.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "asymscore/error.hpp"
#include "asymscore/kernels.hpp"
#include "asymscore/quadrature.hpp"
#include "asymscore/special.hpp"

namespace asymscore::scoring {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const numerics::QuadOptions kQuad{1e-10, 1e-10, 10000};

using families::Affine;
using families::Exponential;
using families::Normal;
using forecasts::TailExtendedDensity;

double quad(const numerics::Integrand& f, std::vector<double> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 2) return 0.0;
  return numerics::integrate(f, std::move(pts), kQuad).value;
}

// Highest integer with non-negligible upper tail mass, plus one.
long lattice_top(const Distribution& F) {
  long k = std::max(0L, static_cast<long>(std::ceil(F.mean())));
  while (F.sf(static_cast<double>(k)) > 1e-18) ++k;
  return k + 1;
}

bool is_even_nonneg_integer(double a) {
  return a >= 0.0 && std::floor(a) == a && std::fmod(a, 2.0) == 0.0;
}

// Breakpoints of F with y added, restricted to [lo, inf).
std::vector<double> points_with(const Distribution& F, double y, double lo = -kInf) {
  std::vector<double> pts;
  for (double b : F.breakpoints()) {
    if (b >= lo) pts.push_back(b);
  }
  if (y >= lo) pts.push_back(y);
  if (lo > -kInf) pts.push_back(lo);
  return pts;
}

double normal_crps(double mu, double sigma, double y) {
  const double z = (y - mu) / sigma;
  return sigma * (z * (2.0 * numerics::normal_cdf(z) - 1.0) + 2.0 * numerics::normal_pdf(z) -
                  1.0 / numerics::kSqrtPi);
}

double exponential_crps(double sigma, double y) {
  if (y < 0.0) return sigma / 2.0 - y;
  return y + 2.0 * sigma * std::exp(-y / sigma) - 1.5 * sigma;
}

// Definitional integral of w (F - 1{y <= x})^2; w == nullptr means w = 1.
double definitional_integral(const Distribution& F, double y, const WeightFunction* w) {
  const double lo = (w && w->nonnegative_domain()) ? 0.0 : -kInf;
  auto f = [&](double x) {
    const double weight = w ? w->w(x) : 1.0;
    if (x < y) {
      const double c = F.cdf(x);
      return c == 0.0 ? 0.0 : weight * c * c;
    }
    const double s = F.sf(x);
    return s == 0.0 ? 0.0 : weight * s * s;
  };
  return quad(f, points_with(F, y, lo));
}

// Same integral for a lattice law: F is constant on [k, k + 1).
double lattice_integral(const Distribution& F, double y, const WeightFunction* w) {
  auto V = [&](double x) { return w ? w->v(x) : x; };
  const bool restricted = w && w->nonnegative_domain();
  double total = 0.0;
  if (y < 0.0 && !restricted) total += V(0.0) - V(y);
  const long top = lattice_top(F);
  for (long k = 0; k <= top; ++k) {
    const double a = static_cast<double>(k);
    const double b = a + 1.0;
    const double c = F.cdf(a);
    const double s = 1.0 - c;
    if (y <= a) {
      if (s > 0.0) total += s * s * (V(b) - V(a));
    } else if (y >= b) {
      if (c > 0.0) total += c * c * (V(b) - V(a));
    } else {
      if (c > 0.0) total += c * c * (V(y) - V(a));
      if (s > 0.0) total += s * s * (V(b) - V(y));
    }
  }
  const double end = static_cast<double>(top + 1);
  if (y > end) total += V(y) - V(end);
  return total;
}

// E|X - y|^beta by integrating tail probabilities in u = r^beta.
double abs_moment_quadrature(const Distribution& F, double y, double beta) {
  const double inv = 1.0 / beta;
  auto f = [&](double u) {
    const double r = beta == 1.0 ? u : std::pow(u, inv);
    return F.cdf(y - r) + F.sf(y + r);
  };
  std::vector<double> pts{0.0, kInf};
  for (double b : F.breakpoints()) {
    if (std::isfinite(b)) pts.push_back(std::pow(std::fabs(b - y), beta));
  }
  return quad(f, pts);
}

double abs_moment_lattice(const Distribution& F, double y, double beta) {
  const long top = lattice_top(F);
  double s = 0.0;
  for (long k = 0; k <= top; ++k) {
    s += F.pdf(static_cast<double>(k)) * std::pow(std::fabs(static_cast<double>(k) - y), beta);
  }
  return s;
}

double self_energy_lattice(const Distribution& F, double beta) {
  const long top = lattice_top(F);
  std::vector<double> p(static_cast<std::size_t>(top) + 1);
  for (long k = 0; k <= top; ++k) p[static_cast<std::size_t>(k)] = F.pdf(static_cast<double>(k));
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      s += p[i] * p[j] * std::pow(static_cast<double>(j - i), beta);
    }
  }
  return 2.0 * s;
}

// E|X - X'|^beta as the outer integral of E|x - X'|^beta against f.
double self_energy_nested(const Distribution& F, double beta) {
  auto f = [&](double x) {
    const double p = F.pdf(x);
    return p == 0.0 ? 0.0 : p * abs_moment_quadrature(F, x, beta);
  };
  return quad(f, F.breakpoints());
}

void require_first_moment(const Distribution& F) {
  if (!F.has_first_moment()) {
    throw Error(ErrorCode::kMomentRequired, F.describe() + " has no finite first moment");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Tags, weights and specs

std::string to_string(LossTag tag) {
  switch (tag) {
    case LossTag::kLog: return "log";
    case LossTag::kQuadratic: return "quadratic";
    case LossTag::kSpherical: return "spherical";
    case LossTag::kCrps: return "crps";
    case LossTag::kTwCrps: return "twcrps";
    case LossTag::kEnergy: return "energy";
    case LossTag::kDs: return "ds";
  }
  return "unknown";
}

LossTag parse_loss_tag(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  for (LossTag t : all_loss_tags()) {
    if (to_string(t) == s) return t;
  }
  if (s == "tw-crps" || s == "tw_crps") return LossTag::kTwCrps;
  if (s == "dawid-sebastiani") return LossTag::kDs;
  throw Error(ErrorCode::kUnknownKind, "unknown loss '" + std::string(text) + "'");
}

const std::vector<LossTag>& all_loss_tags() {
  static const std::vector<LossTag> tags{LossTag::kLog,   LossTag::kQuadratic, LossTag::kSpherical,
                                         LossTag::kCrps,  LossTag::kTwCrps,    LossTag::kEnergy,
                                         LossTag::kDs};
  return tags;
}

WeightFunction::WeightFunction() : name_("power") {}

WeightFunction WeightFunction::power(double alpha) {
  if (!std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidWeight, "power weight exponent must be finite");
  }
  WeightFunction wf;
  wf.alpha_ = alpha;
  return wf;
}

WeightFunction WeightFunction::tabulated(Fn w, Fn v, std::string name) {
  if (!w || !v) throw Error(ErrorCode::kInvalidWeight, "tabulated weight needs w and v");
  WeightFunction wf;
  wf.power_ = false;
  wf.w_ = std::move(w);
  wf.v_ = std::move(v);
  wf.name_ = std::move(name);
  return wf;
}

bool WeightFunction::nonnegative_domain() const {
  return power_ && !is_even_nonneg_integer(alpha_);
}

double WeightFunction::w(double x) const {
  if (!power_) return w_(x);
  if (alpha_ == 0.0) return 1.0;
  if (x < 0.0 && nonnegative_domain()) return 0.0;
  return std::pow(x, alpha_);
}

double WeightFunction::v(double x) const {
  if (!power_) return v_(x);
  if (alpha_ == 0.0) return x;
  if (nonnegative_domain() && x < 0.0) x = 0.0;
  if (alpha_ == -1.0) return std::log(x);
  return std::pow(x, alpha_ + 1.0) / (alpha_ + 1.0);
}

void WeightFunction::check_against(const Distribution& F) const {
  const families::Support s = F.support();
  if (power_) {
    if (nonnegative_domain() && s.lower < 0.0) {
      std::ostringstream os;
      os << "power weight with alpha " << alpha_ << " needs a forecast on [0, inf), got "
         << F.describe();
      throw Error(ErrorCode::kNegativeSupportPowerWeight, os.str());
    }
    return;
  }
  for (int k = 0; k < 16; ++k) {
    const double x = F.quantile((k + 0.5) / 16.0);
    const double wx = w_(x);
    if (!(wx >= 0.0) || !std::isfinite(wx)) {
      throw Error(ErrorCode::kInvalidWeight, "weight is negative or not finite on the support");
    }
    const double h = 1e-5 * std::max(1.0, std::fabs(x));
    const double fd = (v_(x + h) - v_(x - h)) / (2.0 * h);
    if (std::fabs(fd - wx) > 1e-4 * std::max(std::fabs(wx), 1e-8)) {
      throw Error(ErrorCode::kInvalidWeight, "antiderivative v does not match w");
    }
  }
}

std::string WeightFunction::describe() const {
  if (!power_) return name_;
  std::ostringstream os;
  os << "power:" << alpha_;
  return os.str();
}

LossSpec LossSpec::of(LossTag tag) {
  LossSpec s;
  s.tag = tag;
  return s;
}

LossSpec LossSpec::energy(double beta) {
  LossSpec s;
  s.tag = LossTag::kEnergy;
  s.beta = beta;
  s.validate();
  return s;
}

LossSpec LossSpec::twcrps(WeightFunction w) {
  LossSpec s;
  s.tag = LossTag::kTwCrps;
  s.weight = std::move(w);
  return s;
}

void LossSpec::validate() const {
  if (tag == LossTag::kEnergy && !(beta > 0.0 && beta < 2.0)) {
    throw Error(ErrorCode::kParameterOutOfDomain, "energy exponent beta must lie in (0, 2)");
  }
}

std::string LossSpec::describe() const {
  std::ostringstream os;
  os << to_string(tag);
  if (tag == LossTag::kEnergy) os << ":" << beta;
  if (tag == LossTag::kTwCrps) os << "[" << weight.describe() << "]";
  return os.str();
}

LossSpec parse_loss(std::string_view text) {
  const auto colon = text.find(':');
  LossSpec spec = LossSpec::of(parse_loss_tag(text.substr(0, colon)));
  if (colon == std::string_view::npos) return spec;
  std::string arg(text.substr(colon + 1));
  if (arg.rfind("power:", 0) == 0) arg = arg.substr(6);
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(arg, &used);
    if (used != arg.size()) throw std::invalid_argument(arg);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParameterOutOfDomain, "bad loss parameter '" + arg + "'");
  }
  if (spec.tag == LossTag::kEnergy) {
    spec.beta = value;
  } else if (spec.tag == LossTag::kTwCrps) {
    spec.weight = WeightFunction::power(value);
  } else {
    throw Error(ErrorCode::kParameterOutOfDomain,
                "loss '" + to_string(spec.tag) + "' takes no parameter");
  }
  spec.validate();
  return spec;
}

bool loss_law(const LossSpec& spec, double scale, double& factor, double& offset) {
  factor = 1.0;
  offset = 0.0;
  switch (spec.tag) {
    case LossTag::kLog: offset = std::log(scale); return true;
    case LossTag::kDs: offset = 2.0 * std::log(scale); return true;
    case LossTag::kCrps: factor = scale; return true;
    case LossTag::kEnergy: factor = std::pow(scale, spec.beta); return true;
    case LossTag::kQuadratic: factor = 1.0 / scale; return true;
    case LossTag::kSpherical: factor = 1.0 / std::sqrt(scale); return true;
    case LossTag::kTwCrps:
      if (spec.weight.is_constant()) {
        factor = scale;
        return true;
      }
      return false;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Forecast-level quantities

double density_norm2(const Distribution& F) {
  if (const auto* a = dynamic_cast<const Affine*>(&F)) return density_norm2(*a->base()) / a->scale();
  if (const auto* n = dynamic_cast<const Normal*>(&F)) {
    return 1.0 / (2.0 * n->sigma() * numerics::kSqrtPi);
  }
  if (const auto* e = dynamic_cast<const Exponential*>(&F)) return 1.0 / (2.0 * e->sigma());
  if (F.is_discrete()) {
    const long top = lattice_top(F);
    double s = 0.0;
    for (long k = 0; k <= top; ++k) {
      const double p = F.pdf(static_cast<double>(k));
      s += p * p;
    }
    return s;
  }
  const double v = quad(
      [&](double x) {
        const double p = F.pdf(x);
        return p * p;
      },
      F.breakpoints());
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kNonIntegrable, F.describe() + " has a non-square-integrable density");
  }
  return v;
}

double abs_moment(const Distribution& F, double y, double beta) {
  require_first_moment(F);
  if (const auto* a = dynamic_cast<const Affine*>(&F)) {
    return std::pow(a->scale(), beta) * abs_moment(*a->base(), (y - a->shift()) / a->scale(), beta);
  }
  if (const auto* n = dynamic_cast<const Normal*>(&F)) {
    return numerics::normal_abs_moment(n->mu() - y, n->sigma(), beta);
  }
  if (const auto* e = dynamic_cast<const Exponential*>(&F); e && beta == 1.0) {
    const double s = e->sigma();
    return y < 0.0 ? s - y : y - s + 2.0 * s * std::exp(-y / s);
  }
  if (const auto* e = dynamic_cast<const Exponential*>(&F); e && y / e->sigma() < 600.0) {
    const double s = e->sigma();
    const double t = y / s;
    const double g = std::exp(numerics::log_gamma(beta + 1.0));
    if (t <= 0.0) {
      return std::pow(s, beta) * std::exp(-t) * g * numerics::gamma_q(beta + 1.0, -t);
    }
    const double inner = std::pow(t, beta + 1.0) / (beta + 1.0) * numerics::hyp1f1(1.0, beta + 2.0, -t);
    return std::pow(s, beta) * (std::exp(-t) * g + inner);
  }
  if (F.is_discrete()) return abs_moment_lattice(F, y, beta);
  return abs_moment_quadrature(F, y, beta);
}

double self_energy(const Distribution& F, double beta) {
  require_first_moment(F);
  if (const auto* a = dynamic_cast<const Affine*>(&F)) {
    return std::pow(a->scale(), beta) * self_energy(*a->base(), beta);
  }
  if (const auto* n = dynamic_cast<const Normal*>(&F)) {
    return numerics::normal_abs_moment(0.0, numerics::kSqrt2 * n->sigma(), beta);
  }
  if (const auto* e = dynamic_cast<const Exponential*>(&F)) {
    return std::pow(e->sigma(), beta) * std::exp(numerics::log_gamma(beta + 1.0));
  }
  if (F.is_discrete()) return self_energy_lattice(F, beta);
  if (beta == 1.0) {
    // E|X - X'| = 2 int F (1 - F).
    return 2.0 * quad([&](double x) { return F.cdf(x) * F.sf(x); }, F.breakpoints());
  }
  return self_energy_nested(F, beta);
}

double weighted_gini(const Distribution& G, const WeightFunction& w) {
  if (w.is_constant()) return 0.5 * self_energy(G, 1.0);
  if (const auto* e = dynamic_cast<const Exponential*>(&G); e && w.is_power() && w.alpha() > -1.0) {
    const double a1 = w.alpha() + 1.0;
    return std::exp(numerics::log_gamma(a1)) * std::pow(e->sigma(), a1) * (1.0 - std::pow(2.0, -a1));
  }
  const double lo = w.nonnegative_domain() ? 0.0 : -kInf;
  std::vector<double> pts;
  for (double b : G.breakpoints()) {
    if (b >= lo) pts.push_back(b);
  }
  if (lo > -kInf) pts.push_back(lo);
  if (G.is_discrete()) {
    const long top = lattice_top(G);
    double s = 0.0;
    for (long k = 0; k <= top; ++k) {
      const double c = G.cdf(static_cast<double>(k));
      s += c * (1.0 - c) * (w.v(k + 1.0) - w.v(static_cast<double>(k)));
    }
    return s;
  }
  const double v = quad(
      [&](double x) {
        const double c = G.cdf(x);
        const double s = G.sf(x);
        return c == 0.0 || s == 0.0 ? 0.0 : w.w(x) * c * s;
      },
      pts);
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kNonIntegrableWeight, "weight is not integrable against G(1 - G)");
  }
  return v;
}

// ---------------------------------------------------------------------------
// Scorer

Scorer::Scorer(const LossSpec& spec, DistPtr forecast)
    : spec_(spec), forecast_(std::move(forecast)), base_(forecast_) {
  spec_.validate();
  const Distribution& F = *forecast_;
  switch (spec_.tag) {
    case LossTag::kCrps:
    case LossTag::kEnergy:
      require_first_moment(F);
      break;
    case LossTag::kTwCrps:
      spec_.weight.check_against(F);
      if (!spec_.weight.is_constant() && F.is_discrete()) break;
      if (spec_.weight.is_constant()) require_first_moment(F);
      break;
    case LossTag::kDs:
      if (!F.has_finite_variance()) {
        throw Error(ErrorCode::kMomentRequired, F.describe() + " has no finite variance");
      }
      mean_ = F.mean();
      variance_ = F.variance();
      return;
    default:
      break;
  }
  // Peel affine wrappers and apply the loss-level transformation law.
  if (spec_.tag != LossTag::kLog && spec_.tag != LossTag::kDs) {
    while (const auto* a = dynamic_cast<const Affine*>(base_.get())) {
      double factor = 1.0;
      double offset = 0.0;
      if (!loss_law(spec_, a->scale(), factor, offset)) break;
      shift_ = shift_ + scale_ * a->shift();
      scale_ *= a->scale();
      base_ = a->base();
    }
    if (base_ != forecast_) loss_law(spec_, scale_, factor_, offset_);
  }
  const Distribution& B = *base_;
  if (spec_.tag == LossTag::kQuadratic || spec_.tag == LossTag::kSpherical) {
    norm2_ = density_norm2(B);
  }
  if (spec_.tag == LossTag::kEnergy) self_energy_ = self_energy(B, spec_.beta);
}

double Scorer::operator()(double y) const {
  if (spec_.tag == LossTag::kDs) {
    const double d = y - mean_;
    return std::log(variance_) + d * d / variance_;
  }
  const double yb = (y - shift_) / scale_;
  const double s = base_score(yb);
  return factor_ * s + offset_;
}

double Scorer::base_score(double y) const {
  const Distribution& B = *base_;
  switch (spec_.tag) {
    case LossTag::kLog: {
      const double lp = B.log_pdf(y);
      return lp == -kInf ? kInf : -lp;
    }
    case LossTag::kQuadratic:
      return -2.0 * B.pdf(y) + norm2_;
    case LossTag::kSpherical:
      return -B.pdf(y) / std::sqrt(norm2_);
    case LossTag::kEnergy:
      return abs_moment(B, y, spec_.beta) - 0.5 * self_energy_;
    case LossTag::kCrps:
      return twcrps_score(base_, y, WeightFunction());
    case LossTag::kTwCrps:
      return twcrps_score(base_, y, spec_.weight);
    case LossTag::kDs:
      break;
  }
  return 0.0;
}

double twcrps_score(const DistPtr& F_ptr, double y, const WeightFunction& w) {
  const Distribution& F = *F_ptr;
  w.check_against(F);
  if (w.is_constant()) {
    require_first_moment(F);
    if (const auto* a = dynamic_cast<const Affine*>(&F)) {
      return a->scale() * twcrps_score(a->base(), (y - a->shift()) / a->scale(), w);
    }
    if (const auto* n = dynamic_cast<const Normal*>(&F)) return normal_crps(n->mu(), n->sigma(), y);
    if (const auto* e = dynamic_cast<const Exponential*>(&F)) return exponential_crps(e->sigma(), y);
    if (const auto* t = dynamic_cast<const TailExtendedDensity*>(&F)) return t->crps(y);
  }
  if (const auto* e = dynamic_cast<const Exponential*>(&F);
      e && w.is_power() && w.alpha() > -1.0) {
    const double a1 = w.alpha() + 1.0;
    const double sigma = e->sigma();
    const double g = std::exp(numerics::log_gamma(a1));
    const double yp = std::max(y, 0.0);
    double s = w.v(yp) - w.v(0.0) - 2.0 * std::pow(sigma, a1) * g * numerics::gamma_p(a1, yp / sigma) +
               std::pow(sigma / 2.0, a1) * g;
    if (y < 0.0 && !w.nonnegative_domain()) s += w.v(0.0) - w.v(y);
    return s;
  }
  const double v = F.is_discrete() ? lattice_integral(F, y, &w)
                                   : definitional_integral(F, y, w.is_constant() ? nullptr : &w);
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kNonIntegrableWeight, "threshold weight is not integrable for " +
                                                     F.describe());
  }
  return v;
}

std::pair<double, double> twcrps_both_forms(const DistPtr& F_ptr, double y,
                                            const WeightFunction& w) {
  const Distribution& F = *F_ptr;
  w.check_against(F);
  if (F.is_discrete()) {
    throw Error(ErrorCode::kUnsupported, "expectation form needs a continuous forecast");
  }
  const double integral = definitional_integral(F, y, w.is_constant() ? nullptr : &w);
  // Quantile-domain route: E g(X) = int_0^1 g(Q(u)) du and
  // E|Z - Z'| = 2 int_0^1 (2u - 1) Q_Z(u) du for Z = v(X).
  const double vy = w.v(y);
  std::vector<double> levels{0.0, 1e-12, 1e-8, 1e-4, 1e-2, 0.1, 0.5, 0.9, 0.99,
                             1 - 1e-4, 1 - 1e-8, 1 - 1e-12, 1.0};
  const double fy = F.cdf(y);
  if (fy > 0.0 && fy < 1.0) levels.push_back(fy);
  auto vq = [&](double u) { return w.v(u < 0.5 ? F.quantile(u) : F.upper_quantile(1.0 - u)); };
  const double first = quad([&](double u) { return std::fabs(vq(u) - vy); }, levels);
  const double gini = quad([&](double u) { return 2.0 * (2.0 * u - 1.0) * vq(u); }, levels);
  return {integral, first - 0.5 * gini};
}

std::pair<double, double> crps_both_forms(const DistPtr& F_ptr, double y) {
  const Distribution& F = *F_ptr;
  require_first_moment(F);
  if (F.is_discrete()) {
    return {lattice_integral(F, y, nullptr),
            abs_moment_lattice(F, y, 1.0) - 0.5 * self_energy_lattice(F, 1.0)};
  }
  return {definitional_integral(F, y, nullptr),
          abs_moment_quadrature(F, y, 1.0) - 0.5 * self_energy_nested(F, 1.0)};
}

double score(const LossSpec& spec, const DistPtr& F, double y) { return Scorer(spec, F)(y); }

// ---------------------------------------------------------------------------
// Ensembles

double energy_score(const forecasts::Ensemble& E, const std::vector<double>& y, double beta) {
  if (!(beta > 0.0 && beta < 2.0)) {
    throw Error(ErrorCode::kParameterOutOfDomain, "energy exponent beta must lie in (0, 2)");
  }
  if (y.size() != E.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "outcome dimension differs from ensemble dimension");
  }
  const double* w = E.weighted() ? E.weights().data() : nullptr;
  const double* x = E.flat().data();
  return kernels::target_sum(x, E.size(), E.dim(), w, y.data(), beta) -
         0.5 * kernels::pair_sum(x, E.size(), E.dim(), w, beta);
}

double score(const LossSpec& spec, const forecasts::Ensemble& E, const std::vector<double>& y) {
  spec.validate();
  switch (spec.tag) {
    case LossTag::kEnergy:
      return energy_score(E, y, spec.beta);
    case LossTag::kCrps:
      if (E.dim() != 1) throw Error(ErrorCode::kDimensionMismatch, "crps needs a univariate ensemble");
      return energy_score(E, y, 1.0);
    case LossTag::kTwCrps: {
      if (E.dim() != 1 || y.size() != 1) {
        throw Error(ErrorCode::kDimensionMismatch, "twcrps needs a univariate ensemble");
      }
      const WeightFunction& wf = spec.weight;
      std::vector<double> v(E.size());
      for (std::size_t i = 0; i < E.size(); ++i) {
        const double xi = E.member(i)[0];
        if (wf.nonnegative_domain() && xi < 0.0) {
          throw Error(ErrorCode::kNegativeSupportPowerWeight, "ensemble member below zero");
        }
        v[i] = wf.v(xi);
      }
      const forecasts::Ensemble T(std::move(v), 1, E.weights());
      return energy_score(T, {wf.v(y[0])}, 1.0);
    }
    case LossTag::kDs: {
      if (E.dim() != 1 || y.size() != 1) {
        throw Error(ErrorCode::kDimensionMismatch, "ds needs a univariate ensemble");
      }
      const double var = E.variance();
      if (!(var > 0.0)) throw Error(ErrorCode::kZeroVariance, "ensemble has zero variance");
      const double d = y[0] - E.mean();
      return std::log(var) + d * d / var;
    }
    default:
      throw Error(ErrorCode::kMissingCapability,
                  "loss '" + to_string(spec.tag) + "' needs a density, which an ensemble lacks");
  }
}

double score(const LossSpec& spec, const forecasts::Ensemble& E, double y) {
  return score(spec, E, std::vector<double>{y});
}

}  // namespace asymscore::scoring

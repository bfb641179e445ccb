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

#include "asymscore/forecasts.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include "asymscore/special.hpp"

namespace asymscore::forecasts {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinSpacing = 1e-12;
constexpr double kKernelWindow = 12.0;

std::string pair_text(const QuantileForecast& q, std::size_t i) {
  std::ostringstream os;
  os.precision(12);
  os << "levels " << q.levels[i] << " and " << q.levels[i + 1] << " have values " << q.values[i]
     << " and " << q.values[i + 1];
  return os.str();
}

ValidationResult reject(ErrorCode code, std::string detail, std::size_t i = 0) {
  ValidationResult r;
  r.accepted = false;
  r.code = code;
  r.detail = std::move(detail);
  r.first = i;
  r.second = i + 1;
  return r;
}

}  // namespace

ValidationResult validate_quantiles(const QuantileForecast& q) {
  if (q.levels.size() != q.values.size()) {
    return reject(ErrorCode::kDimensionMismatch, "levels and values differ in length");
  }
  if (q.levels.size() < 4) {
    return reject(ErrorCode::kTooFewLevels, "at least 4 quantile levels are required");
  }
  for (std::size_t i = 0; i < q.levels.size(); ++i) {
    const double t = q.levels[i];
    if (!(t > 0.0 && t < 1.0)) {
      return reject(ErrorCode::kParameterOutOfDomain, "quantile level outside (0, 1)", i);
    }
    if (!std::isfinite(q.values[i])) {
      return reject(ErrorCode::kDataError, "non-finite quantile value", i);
    }
    if (i > 0 && !(q.levels[i] > q.levels[i - 1])) {
      return reject(ErrorCode::kParameterOutOfDomain, "quantile levels must increase", i - 1);
    }
  }
  for (std::size_t i = 0; i + 1 < q.values.size(); ++i) {
    if (q.values[i + 1] < q.values[i]) {
      return reject(ErrorCode::kCrossing, "crossing: " + pair_text(q, i), i);
    }
    if (q.values[i + 1] == q.values[i]) {
      return reject(ErrorCode::kAtom, "atom: " + pair_text(q, i), i);
    }
  }
  return {};
}

void require_valid(const QuantileForecast& q) {
  const ValidationResult r = validate_quantiles(q);
  if (!r.accepted) throw Error(r.code, r.detail);
}

// ---------------------------------------------------------------------------
// TailExtendedDensity

TailExtendedDensity::TailExtendedDensity(std::vector<double> levels, std::vector<double> knots,
                                         std::vector<double> left, std::vector<double> right,
                                         double rate_lo, double rate_hi)
    : levels_(std::move(levels)),
      knots_(std::move(knots)),
      left_(std::move(left)),
      right_(std::move(right)),
      rate_lo_(rate_lo),
      rate_hi_(rate_hi) {
  const std::size_t m = knots_.size();
  prefix_f2_.assign(m, 0.0);
  suffix_g2_.assign(m, 0.0);
  prefix_f2_[0] = levels_[0] * levels_[0] / (2.0 * rate_lo_);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    prefix_f2_[i + 1] = prefix_f2_[i] + segment_square(i, 0.0, knots_[i + 1] - knots_[i], false);
  }
  const double tail = 1.0 - levels_[m - 1];
  suffix_g2_[m - 1] = tail * tail / (2.0 * rate_hi_);
  for (std::size_t i = m - 1; i-- > 0;) {
    suffix_g2_[i] = suffix_g2_[i + 1] + segment_square(i, 0.0, knots_[i + 1] - knots_[i], true);
  }
}

std::vector<double> TailExtendedDensity::params() const {
  std::vector<double> p = levels_;
  p.insert(p.end(), knots_.begin(), knots_.end());
  return p;
}

families::Support TailExtendedDensity::support() const { return {-kInf, kInf}; }

std::size_t TailExtendedDensity::segment_of(double x) const {
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - knots_.begin());
  i = i == 0 ? 0 : i - 1;
  return std::min(i, knots_.size() - 2);
}

double TailExtendedDensity::segment_cdf(std::size_t i, double t) const {
  const double dq = knots_[i + 1] - knots_[i];
  const double a = left_[i];
  const double b = right_[i];
  return levels_[i] + a * t + (b - a) * t * t / (2.0 * dq);
}

double TailExtendedDensity::segment_square(std::size_t i, double t0, double t1,
                                           bool upper) const {
  // Three-point Gauss-Legendre is exact for the quartic integrand.
  static const std::array<double, 3> nodes{-0.7745966692414834, 0.0, 0.7745966692414834};
  static const std::array<double, 3> weights{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  const double half = 0.5 * (t1 - t0);
  const double mid = 0.5 * (t1 + t0);
  double s = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double F = segment_cdf(i, mid + half * nodes[k]);
    const double v = upper ? 1.0 - F : F;
    s += weights[k] * v * v;
  }
  return s * half;
}

double TailExtendedDensity::pdf(double x) const {
  const std::size_t m = knots_.size();
  if (x < knots_[0]) return rate_lo_ * levels_[0] * std::exp(rate_lo_ * (x - knots_[0]));
  if (x > knots_[m - 1]) {
    return rate_hi_ * (1.0 - levels_[m - 1]) * std::exp(-rate_hi_ * (x - knots_[m - 1]));
  }
  const std::size_t i = segment_of(x);
  const double dq = knots_[i + 1] - knots_[i];
  const double t = (x - knots_[i]) / dq;
  return left_[i] + (right_[i] - left_[i]) * t;
}

double TailExtendedDensity::cdf(double x) const {
  const std::size_t m = knots_.size();
  if (x < knots_[0]) return levels_[0] * std::exp(rate_lo_ * (x - knots_[0]));
  if (x >= knots_[m - 1]) return 1.0 - sf(x);
  const std::size_t i = segment_of(x);
  return std::clamp(segment_cdf(i, x - knots_[i]), 0.0, 1.0);
}

double TailExtendedDensity::sf(double x) const {
  const std::size_t m = knots_.size();
  if (x >= knots_[m - 1]) {
    return (1.0 - levels_[m - 1]) * std::exp(-rate_hi_ * (x - knots_[m - 1]));
  }
  if (x < knots_[0]) return 1.0 - cdf(x);
  const std::size_t i = segment_of(x);
  return std::clamp(1.0 - segment_cdf(i, x - knots_[i]), 0.0, 1.0);
}

double TailExtendedDensity::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -kInf;
    if (p == 1.0) return kInf;
    throw Error(ErrorCode::kParameterOutOfDomain, "quantile level outside [0, 1]");
  }
  const std::size_t m = knots_.size();
  if (p <= levels_[0]) return knots_[0] + std::log(p / levels_[0]) / rate_lo_;
  if (p >= levels_[m - 1]) return upper_quantile(1.0 - p);
  auto it = std::upper_bound(levels_.begin(), levels_.end(), p);
  const std::size_t i = std::min(static_cast<std::size_t>(it - levels_.begin()) - 1, m - 2);
  const double dq = knots_[i + 1] - knots_[i];
  const double a = left_[i];
  const double b = right_[i];
  const double c = p - levels_[i];
  const double disc = std::max(a * a + 2.0 * (b - a) * c / dq, 0.0);
  const double denom = a + std::sqrt(disc);
  const double t = denom > 0.0 ? 2.0 * c / denom : 0.0;
  return knots_[i] + std::clamp(t, 0.0, dq);
}

double TailExtendedDensity::upper_quantile(double q) const {
  const std::size_t m = knots_.size();
  const double tail = 1.0 - levels_[m - 1];
  if (q > 0.0 && q <= tail) return knots_[m - 1] - std::log(q / tail) / rate_hi_;
  return quantile(1.0 - q);
}

double TailExtendedDensity::mean() const {
  const std::size_t m = knots_.size();
  double s = levels_[0] * (knots_[0] - 1.0 / rate_lo_);
  s += (1.0 - levels_[m - 1]) * (knots_[m - 1] + 1.0 / rate_hi_);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double x0 = knots_[i];
    const double x1 = knots_[i + 1];
    const double xm = 0.5 * (x0 + x1);
    s += (x1 - x0) / 6.0 * (x0 * left_[i] + 2.0 * xm * (left_[i] + right_[i]) + x1 * right_[i]);
  }
  return s;
}

double TailExtendedDensity::variance() const {
  const std::size_t m = knots_.size();
  const double mu = mean();
  const double lo_mean = knots_[0] - 1.0 / rate_lo_ - mu;
  const double hi_mean = knots_[m - 1] + 1.0 / rate_hi_ - mu;
  double s = levels_[0] * (lo_mean * lo_mean + 1.0 / (rate_lo_ * rate_lo_));
  s += (1.0 - levels_[m - 1]) * (hi_mean * hi_mean + 1.0 / (rate_hi_ * rate_hi_));
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double x0 = knots_[i] - mu;
    const double x1 = knots_[i + 1] - mu;
    const double xm = 0.5 * (x0 + x1);
    s += (x1 - x0) / 6.0 *
         (x0 * x0 * left_[i] + 2.0 * xm * xm * (left_[i] + right_[i]) + x1 * x1 * right_[i]);
  }
  return s;
}

DistPtr TailExtendedDensity::affine(double shift, double scale) const {
  if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(shift)) {
    throw Error(ErrorCode::kParameterOutOfDomain, "affine map needs finite shift and scale > 0");
  }
  std::vector<double> knots(knots_.size());
  std::vector<double> left(left_.size());
  std::vector<double> right(right_.size());
  for (std::size_t i = 0; i < knots_.size(); ++i) knots[i] = shift + scale * knots_[i];
  for (std::size_t i = 0; i < left_.size(); ++i) {
    left[i] = left_[i] / scale;
    right[i] = right_[i] / scale;
  }
  return std::make_shared<TailExtendedDensity>(levels_, std::move(knots), std::move(left),
                                               std::move(right), rate_lo_ / scale,
                                               rate_hi_ / scale);
}

std::vector<double> TailExtendedDensity::knot_densities() const {
  std::vector<double> d(knots_.size());
  d[0] = rate_lo_ * levels_[0];
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) d[i + 1] = right_[i];
  return d;
}

double TailExtendedDensity::crps(double y) const {
  const std::size_t m = knots_.size();
  double below = 0.0;  // int_{-inf}^y F^2
  double above = 0.0;  // int_y^inf (1-F)^2
  if (y < knots_[0]) {
    const double lam = rate_lo_;
    const double t0 = levels_[0];
    const double e = std::exp(lam * (y - knots_[0]));
    below = t0 * t0 * e * e / (2.0 * lam);
    above = suffix_g2_[0] + (knots_[0] - y) - 2.0 * t0 * (1.0 - e) / lam +
            t0 * t0 * (1.0 - e * e) / (2.0 * lam);
  } else if (y >= knots_[m - 1]) {
    const double lam = rate_hi_;
    const double s0 = 1.0 - levels_[m - 1];
    const double d = y - knots_[m - 1];
    const double e = std::exp(-lam * d);
    above = s0 * s0 * e * e / (2.0 * lam);
    below = prefix_f2_[m - 1] + d - 2.0 * s0 * (1.0 - e) / lam + s0 * s0 * (1.0 - e * e) / (2.0 * lam);
  } else {
    const std::size_t i = segment_of(y);
    const double t = y - knots_[i];
    const double dq = knots_[i + 1] - knots_[i];
    below = prefix_f2_[i] + segment_square(i, 0.0, t, false);
    above = suffix_g2_[i + 1] + segment_square(i, t, dq, true);
  }
  return below + above;
}

std::shared_ptr<const TailExtendedDensity> quantile_to_distribution(const QuantileForecast& q) {
  require_valid(q);
  const std::size_t m = q.values.size();
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (q.values[i + 1] - q.values[i] < kMinSpacing) {
      throw Error(ErrorCode::kDegenerateSpacing, "degenerate spacing: " + pair_text(q, i));
    }
  }
  const auto& tau = q.levels;
  const auto& x = q.values;
  const double rate_lo = std::log(tau[1] / tau[0]) / (x[1] - x[0]);
  const double rate_hi = std::log((1.0 - tau[m - 2]) / (1.0 - tau[m - 1])) / (x[m - 1] - x[m - 2]);
  std::vector<double> left(m - 1);
  std::vector<double> right(m - 1);
  double a = rate_lo * tau[0];
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double slope = 2.0 * (tau[i + 1] - tau[i]) / (x[i + 1] - x[i]);
    double b = slope - a;
    if (b < 0.0) {
      b = 0.0;
      a = slope;
    }
    left[i] = a;
    right[i] = b;
    a = b;
  }
  return std::make_shared<TailExtendedDensity>(tau, x, std::move(left), std::move(right), rate_lo,
                                               rate_hi);
}

// ---------------------------------------------------------------------------
// KdeDensity

KdeDensity::KdeDensity(std::vector<double> samples, double bandwidth)
    : samples_(std::move(samples)), bandwidth_(bandwidth) {
  if (samples_.empty()) throw Error(ErrorCode::kTooFewSamples, "kde needs samples");
  if (!(bandwidth_ > 0.0) || !std::isfinite(bandwidth_)) {
    throw Error(ErrorCode::kParameterOutOfDomain, "kde bandwidth must be positive");
  }
  std::sort(samples_.begin(), samples_.end());
  lo_ = samples_.front();
  hi_ = samples_.back();
  mass_lo_ = mixture_cdf(lo_);
  mass_hi_ = mixture_sf(hi_);
  rate_lo_ = mixture_pdf(lo_) / mass_lo_;
  rate_hi_ = mixture_pdf(hi_) / mass_hi_;

  // Moments: truncated Gaussian pieces on [lo, hi] plus the two tails.
  const double h = bandwidth_;
  const double n = static_cast<double>(samples_.size());
  double m0 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  const double centre = 0.5 * (lo_ + hi_);
  for (double s : samples_) {
    const double sc = s - centre;
    const double al = (lo_ - s) / h;
    const double be = (hi_ - s) / h;
    const double mass = numerics::normal_cdf(be) - numerics::normal_cdf(al);
    const double pa = numerics::normal_pdf(al);
    const double pb = numerics::normal_pdf(be);
    m0 += mass;
    m1 += sc * mass + h * (pa - pb);
    m2 += (sc * sc + h * h) * mass + 2.0 * sc * h * (pa - pb) + h * h * (al * pa - be * pb);
  }
  m1 /= n;
  m2 /= n;
  const double lmean = lo_ - centre - 1.0 / rate_lo_;
  const double hmean = hi_ - centre + 1.0 / rate_hi_;
  m1 += mass_lo_ * lmean + mass_hi_ * hmean;
  m2 += mass_lo_ * (lmean * lmean + 1.0 / (rate_lo_ * rate_lo_)) +
        mass_hi_ * (hmean * hmean + 1.0 / (rate_hi_ * rate_hi_));
  mean_ = centre + m1;
  variance_ = m2 - m1 * m1;
}

families::Support KdeDensity::support() const { return {-kInf, kInf}; }

double KdeDensity::mixture_pdf(double x) const {
  const double h = bandwidth_;
  auto first = std::lower_bound(samples_.begin(), samples_.end(), x - kKernelWindow * h);
  auto last = std::upper_bound(samples_.begin(), samples_.end(), x + kKernelWindow * h);
  if (first == last) {
    first = samples_.begin();
    last = samples_.end();
  }
  double s = 0.0;
  for (auto it = first; it != last; ++it) s += numerics::normal_pdf((x - *it) / h);
  return s / (static_cast<double>(samples_.size()) * h);
}

double KdeDensity::mixture_cdf(double x) const {
  const double h = bandwidth_;
  auto first = std::lower_bound(samples_.begin(), samples_.end(), x - kKernelWindow * h);
  auto last = std::upper_bound(samples_.begin(), samples_.end(), x + kKernelWindow * h);
  double s = static_cast<double>(first - samples_.begin());
  for (auto it = first; it != last; ++it) s += numerics::normal_cdf((x - *it) / h);
  return s / static_cast<double>(samples_.size());
}

double KdeDensity::mixture_sf(double x) const {
  const double h = bandwidth_;
  auto first = std::lower_bound(samples_.begin(), samples_.end(), x - kKernelWindow * h);
  auto last = std::upper_bound(samples_.begin(), samples_.end(), x + kKernelWindow * h);
  double s = static_cast<double>(samples_.end() - last);
  for (auto it = first; it != last; ++it) s += numerics::normal_cdf((*it - x) / h);
  return s / static_cast<double>(samples_.size());
}

double KdeDensity::pdf(double x) const {
  if (x < lo_) return rate_lo_ * mass_lo_ * std::exp(rate_lo_ * (x - lo_));
  if (x > hi_) return rate_hi_ * mass_hi_ * std::exp(-rate_hi_ * (x - hi_));
  return mixture_pdf(x);
}

double KdeDensity::cdf(double x) const {
  if (x < lo_) return mass_lo_ * std::exp(rate_lo_ * (x - lo_));
  if (x > hi_) return 1.0 - sf(x);
  return mixture_cdf(x);
}

double KdeDensity::sf(double x) const {
  if (x > hi_) return mass_hi_ * std::exp(-rate_hi_ * (x - hi_));
  if (x < lo_) return 1.0 - cdf(x);
  return mixture_sf(x);
}

std::vector<double> KdeDensity::kinks() const { return {lo_, hi_}; }

DistPtr KdeDensity::affine(double shift, double scale) const {
  if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(shift)) {
    throw Error(ErrorCode::kParameterOutOfDomain, "affine map needs finite shift and scale > 0");
  }
  std::vector<double> s(samples_.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = shift + scale * samples_[i];
  return std::make_shared<KdeDensity>(std::move(s), bandwidth_ * scale);
}

double population_sd(const std::vector<double>& x) {
  if (x.empty()) throw Error(ErrorCode::kTooFewSamples, "empty sample");
  const double n = static_cast<double>(x.size());
  const double mu = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / n);
}

std::shared_ptr<const KdeDensity> kde_fit(const std::vector<double>& samples) {
  if (samples.size() < 10) {
    throw Error(ErrorCode::kTooFewSamples, "kde needs at least 10 samples");
  }
  for (double v : samples) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kDataError, "non-finite sample");
  }
  const double sd = population_sd(samples);
  if (!(sd > 0.0)) throw Error(ErrorCode::kZeroVariance, "samples have zero variance");
  const double h = sd * std::pow(static_cast<double>(samples.size()), -0.2);
  return std::make_shared<KdeDensity>(samples, h);
}

// ---------------------------------------------------------------------------
// Ensemble

Ensemble::Ensemble(std::vector<double> flat, std::size_t dim, std::vector<double> weights)
    : flat_(std::move(flat)), dim_(dim), weights_(std::move(weights)) {
  if (dim_ == 0) throw Error(ErrorCode::kParameterOutOfDomain, "ensemble dimension must be >= 1");
  if (flat_.empty() || flat_.size() % dim_ != 0) {
    throw Error(ErrorCode::kDimensionMismatch, "ensemble storage is not a whole number of members");
  }
  if (!weights_.empty()) {
    if (weights_.size() != size()) {
      throw Error(ErrorCode::kDimensionMismatch, "one weight per member is required");
    }
    double total = 0.0;
    for (double w : weights_) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw Error(ErrorCode::kInvalidWeight, "member weights must be finite and nonnegative");
      }
      total += w;
    }
    if (!(total > 0.0)) throw Error(ErrorCode::kInvalidWeight, "member weights sum to zero");
    for (double& w : weights_) w /= total;
  }
}

Ensemble Ensemble::univariate(std::vector<double> values, std::vector<double> weights) {
  return Ensemble(std::move(values), 1, std::move(weights));
}

double Ensemble::weight(std::size_t i) const {
  return weights_.empty() ? 1.0 / static_cast<double>(size()) : weights_[i];
}

double Ensemble::mean() const {
  if (dim_ != 1) throw Error(ErrorCode::kDimensionMismatch, "moments need a univariate ensemble");
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i) s += weight(i) * flat_[i];
  return s;
}

double Ensemble::variance() const {
  const double mu = mean();
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i) s += weight(i) * (flat_[i] - mu) * (flat_[i] - mu);
  return s;
}

DistPtr affine_to(const DistPtr& dist, double target_mean, double target_sd) {
  if (!(target_sd > 0.0) || !std::isfinite(target_sd) || !std::isfinite(target_mean)) {
    throw Error(ErrorCode::kParameterOutOfDomain, "target sd must be positive and finite");
  }
  if (!dist->has_finite_variance()) {
    throw Error(ErrorCode::kInfiniteMoments, dist->describe() + " has no finite variance");
  }
  const double sd = dist->sd();
  if (!(sd > 0.0)) throw Error(ErrorCode::kZeroVariance, "distribution has zero variance");
  const double scale = target_sd / sd;
  return dist->affine(target_mean - scale * dist->mean(), scale);
}

Ensemble affine_to(const Ensemble& ensemble, double target_mean, double target_sd) {
  if (!(target_sd > 0.0) || !std::isfinite(target_sd) || !std::isfinite(target_mean)) {
    throw Error(ErrorCode::kParameterOutOfDomain, "target sd must be positive and finite");
  }
  const double mu = ensemble.mean();
  const double sd = std::sqrt(ensemble.variance());
  if (!(sd > 0.0)) throw Error(ErrorCode::kZeroVariance, "ensemble has zero variance");
  std::vector<double> v(ensemble.flat());
  for (double& x : v) x = target_mean + target_sd * (x - mu) / sd;
  return Ensemble(std::move(v), 1, ensemble.weights());
}

}  // namespace asymscore::forecasts

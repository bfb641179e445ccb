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

// Non-parametric forecasts: quantile sets, their tail-extended densities,
// kernel density estimates and ensembles.

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "asymscore/error.hpp"
#include "asymscore/families.hpp"

namespace asymscore::forecasts {

using families::DistPtr;

struct ForecastMeta {
  std::string forecaster;
  std::string location;
  std::string date;
  int horizon = 0;
};

struct QuantileForecast {
  std::vector<double> levels;
  std::vector<double> values;
  ForecastMeta meta;
};

struct ValidationResult {
  bool accepted = true;
  ErrorCode code = ErrorCode::kDataError;
  std::string detail;
  /// Offending adjacent level pair for Atom / Crossing.
  std::size_t first = 0;
  std::size_t second = 0;
};

/// Checks level ordering, the minimum level count (4), and strictly
/// increasing values. Raw values are inspected in the given order so an
/// out-of-order pair is a Crossing and an equal pair is an Atom.
ValidationResult validate_quantiles(const QuantileForecast& q);

/// Throws the Error described by validate_quantiles when rejected.
void require_valid(const QuantileForecast& q);

/// Piecewise-linear density between the quantile knots with exponential
/// tails beyond the extreme knots.
class TailExtendedDensity final : public families::Distribution {
 public:
  std::string kind() const override { return "tail-extended"; }
  std::vector<double> params() const override;
  families::Support support() const override;
  double pdf(double x) const override;
  double cdf(double x) const override;
  double sf(double x) const override;
  double quantile(double p) const override;
  double upper_quantile(double q) const override;
  double mean() const override;
  double variance() const override;
  std::vector<double> kinks() const override { return knots_; }
  DistPtr affine(double shift, double scale) const override;

  /// Exact CRPS from prefix integrals of F^2 and (1 - F)^2.
  double crps(double y) const;

  const std::vector<double>& levels() const { return levels_; }
  const std::vector<double>& knots() const { return knots_; }
  /// Density at each knot; at a knot where a clamped segment starts, the
  /// value reported is the left limit.
  std::vector<double> knot_densities() const;
  double lower_rate() const { return rate_lo_; }
  double upper_rate() const { return rate_hi_; }
  /// Density at the two ends of interior segment i.
  double segment_left(std::size_t i) const { return left_[i]; }
  double segment_right(std::size_t i) const { return right_[i]; }

  TailExtendedDensity(std::vector<double> levels, std::vector<double> knots,
                      std::vector<double> left, std::vector<double> right, double rate_lo,
                      double rate_hi);

 private:
  std::size_t segment_of(double x) const;
  double segment_cdf(std::size_t i, double t) const;
  // int over [t0, t1] (offsets within segment i) of F^2, or (1-F)^2 if upper
  double segment_square(std::size_t i, double t0, double t1, bool upper) const;

  std::vector<double> levels_;
  std::vector<double> knots_;
  std::vector<double> left_;
  std::vector<double> right_;
  double rate_lo_;
  double rate_hi_;
  std::vector<double> prefix_f2_;  // int_{-inf}^{q_i} F^2
  std::vector<double> suffix_g2_;  // int_{q_i}^{inf} (1-F)^2
};

/// Builds the tail-extended density. Lower-tail continuity seeds the first
/// knot density; each further knot follows from the segment mass; a
/// negative knot value is clamped to zero and the segment's left value is
/// re-solved so the segment keeps its mass.
std::shared_ptr<const TailExtendedDensity> quantile_to_distribution(const QuantileForecast& q);

/// Gaussian kernel density estimate with exponential tails grafted at the
/// extreme samples.
class KdeDensity final : public families::Distribution {
 public:
  KdeDensity(std::vector<double> samples, double bandwidth);

  std::string kind() const override { return "kde"; }
  std::vector<double> params() const override { return {bandwidth_}; }
  families::Support support() const override;
  double pdf(double x) const override;
  double cdf(double x) const override;
  double sf(double x) const override;
  double mean() const override { return mean_; }
  double variance() const override { return variance_; }
  std::vector<double> kinks() const override;
  DistPtr affine(double shift, double scale) const override;

  const std::vector<double>& samples() const { return samples_; }
  double bandwidth() const { return bandwidth_; }
  double lower_rate() const { return rate_lo_; }
  double upper_rate() const { return rate_hi_; }

 private:
  double mixture_pdf(double x) const;
  double mixture_cdf(double x) const;
  double mixture_sf(double x) const;

  std::vector<double> samples_;  // sorted
  double bandwidth_;
  double lo_;
  double hi_;
  double mass_lo_;
  double mass_hi_;
  double rate_lo_;
  double rate_hi_;
  double mean_;
  double variance_;
};

/// Population standard deviation of a sample.
double population_sd(const std::vector<double>& x);

/// Scott's rule: bandwidth = population sd * n^(-1/5). Needs >= 10
/// samples with nonzero spread.
std::shared_ptr<const KdeDensity> kde_fit(const std::vector<double>& samples);

/// Finite collection of members in R^d, optionally weighted.
class Ensemble {
 public:
  /// Members stored row-major: member i occupies [i*dim, (i+1)*dim).
  Ensemble(std::vector<double> flat, std::size_t dim, std::vector<double> weights = {});
  static Ensemble univariate(std::vector<double> values, std::vector<double> weights = {});

  std::size_t size() const { return flat_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  const double* member(std::size_t i) const { return flat_.data() + i * dim_; }
  bool weighted() const { return !weights_.empty(); }
  double weight(std::size_t i) const;
  const std::vector<double>& flat() const { return flat_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Univariate moments (dim must be 1); population convention.
  double mean() const;
  double variance() const;

 private:
  std::vector<double> flat_;
  std::size_t dim_;
  std::vector<double> weights_;
};

/// Law of target_mean + target_sd (X - mean) / sd.
DistPtr affine_to(const DistPtr& dist, double target_mean, double target_sd);
Ensemble affine_to(const Ensemble& ensemble, double target_mean, double target_sd);

}  // namespace asymscore::forecasts

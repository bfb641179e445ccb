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

// Univariate probability laws and the scale / location family wrappers.

#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "asymscore/random.hpp"

namespace asymscore::families {

enum class SupportKind { kContinuous, kLattice };

struct Support {
  double lower;
  double upper;
  SupportKind kind = SupportKind::kContinuous;

  bool contains(double x) const { return x >= lower && x <= upper; }
};

class Distribution;
using DistPtr = std::shared_ptr<const Distribution>;

/// Immutable univariate law. Lattice laws (Poisson) report their pmf through
/// pdf() and live on the nonnegative integers.
class Distribution : public std::enable_shared_from_this<Distribution> {
 public:
  virtual ~Distribution() = default;

  virtual std::string kind() const = 0;
  virtual std::vector<double> params() const = 0;
  virtual Support support() const = 0;
  bool is_discrete() const { return support().kind == SupportKind::kLattice; }

  virtual double pdf(double x) const = 0;
  virtual double log_pdf(double x) const;
  virtual double cdf(double x) const = 0;
  /// Upper tail 1 - cdf(x); overridden where it can be formed without
  /// cancellation.
  virtual double sf(double x) const { return 1.0 - cdf(x); }
  virtual double quantile(double p) const;
  /// Quantile at level 1 - q, accurate for tiny q.
  virtual double upper_quantile(double q) const;

  /// Throws InfiniteMoments when the moment does not exist.
  virtual double mean() const = 0;
  virtual double variance() const = 0;
  double sd() const;
  virtual bool has_first_moment() const { return true; }
  virtual bool has_finite_variance() const { return has_first_moment(); }

  /// Points where the density is not smooth.
  virtual std::vector<double> kinks() const { return {}; }

  virtual double sample(Rng& rng) const;

  /// Law of shift + scale * X (scale > 0). Families closed under the map
  /// return their own kind; others return an Affine wrapper.
  virtual DistPtr affine(double shift, double scale) const;

  /// Sorted integration breakpoints: support ends, kinks and a ladder of
  /// quantiles reaching 1e-14 into each tail. Computed once.
  const std::vector<double>& breakpoints() const;

  std::string describe() const;

 protected:
  virtual std::vector<double> compute_breakpoints() const;
  /// Bracketed bisection on the CDF (or survival function for upper).
  double solve_quantile(double level, bool upper) const;

 private:
  mutable std::once_flag breakpoints_once_;
  mutable std::vector<double> breakpoints_;
};

class Normal final : public Distribution {
 public:
  Normal(double mu, double sigma);
  std::string kind() const override { return "normal"; }
  std::vector<double> params() const override { return {mu_, sigma_}; }
  Support support() const override;
  double pdf(double x) const override;
  double log_pdf(double x) const override;
  double cdf(double x) const override;
  double sf(double x) const override;
  double quantile(double p) const override;
  double upper_quantile(double q) const override;
  double mean() const override { return mu_; }
  double variance() const override { return sigma_ * sigma_; }
  double sample(Rng& rng) const override;
  DistPtr affine(double shift, double scale) const override;
  double mu() const { return mu_; }
  double sigma() const { return sigma_; }

 private:
  double mu_;
  double sigma_;
};

class Exponential final : public Distribution {
 public:
  explicit Exponential(double sigma);
  std::string kind() const override { return "exponential"; }
  std::vector<double> params() const override { return {sigma_}; }
  Support support() const override;
  double pdf(double x) const override;
  double log_pdf(double x) const override;
  double cdf(double x) const override;
  double sf(double x) const override;
  double quantile(double p) const override;
  double upper_quantile(double q) const override;
  double mean() const override { return sigma_; }
  double variance() const override { return sigma_ * sigma_; }
  double sample(Rng& rng) const override;
  DistPtr affine(double shift, double scale) const override;
  double sigma() const { return sigma_; }

 private:
  double sigma_;
};

class Laplace final : public Distribution {
 public:
  Laplace(double mu, double b);
  std::string kind() const override { return "laplace"; }
  std::vector<double> params() const override { return {mu_, b_}; }
  Support support() const override;
  double pdf(double x) const override;
  double log_pdf(double x) const override;
  double cdf(double x) const override;
  double sf(double x) const override;
  double quantile(double p) const override;
  double upper_quantile(double q) const override;
  double mean() const override { return mu_; }
  double variance() const override { return 2.0 * b_ * b_; }
  std::vector<double> kinks() const override { return {mu_}; }
  DistPtr affine(double shift, double scale) const override;
  double mu() const { return mu_; }
  double b() const { return b_; }

 private:
  double mu_;
  double b_;
};

/// Density k/sigma (x/sigma)^(k-1) exp(-(x/sigma)^k).
class Weibull final : public Distribution {
 public:
  Weibull(double k, double sigma);
  std::string kind() const override { return "weibull"; }
  std::vector<double> params() const override { return {k_, sigma_}; }
  Support support() const override;
  double pdf(double x) const override;
  double log_pdf(double x) const override;
  double cdf(double x) const override;
  double sf(double x) const override;
  double quantile(double p) const override;
  double upper_quantile(double q) const override;
  double mean() const override;
  double variance() const override;
  DistPtr affine(double shift, double scale) const override;

 private:
  double k_;
  double sigma_;
};

/// Shape k, scale sigma.
class Gamma final : public Distribution {
 public:
  Gamma(double k, double sigma);
  std::string kind() const override { return "gamma"; }
  std::vector<double> params() const override { return {k_, sigma_}; }
  Support support() const override;
  double pdf(double x) const override;
  double log_pdf(double x) const override;
  double cdf(double x) const override;
  double sf(double x) const override;
  double mean() const override { return k_ * sigma_; }
  double variance() const override { return k_ * sigma_ * sigma_; }
  double sample(Rng& rng) const override;
  DistPtr affine(double shift, double scale) const override;

 private:
  double k_;
  double sigma_;
};

/// Density sigma^-k gamma x^(k-1) exp(-(x/sigma)^gamma) / Gamma(k/gamma).
class GeneralizedGamma final : public Distribution {
 public:
  GeneralizedGamma(double sigma, double gamma, double k);
  std::string kind() const override { return "generalized-gamma"; }
  std::vector<double> params() const override { return {sigma_, gamma_, k_}; }
  Support support() const override;
  double pdf(double x) const override;
  double log_pdf(double x) const override;
  double cdf(double x) const override;
  double sf(double x) const override;
  double mean() const override;
  double variance() const override;
  DistPtr affine(double shift, double scale) const override;

 private:
  double sigma_;
  double gamma_;
  double k_;
  double log_norm_;
};

/// The generalized gamma density reflected onto the real line and halved.
class SymmetricGeneralizedGamma final : public Distribution {
 public:
  SymmetricGeneralizedGamma(double sigma, double gamma, double k);
  std::string kind() const override { return "symmetric-generalized-gamma"; }
  std::vector<double> params() const override { return {sigma_, gamma_, k_}; }
  Support support() const override;
  double pdf(double x) const override;
  double log_pdf(double x) const override;
  double cdf(double x) const override;
  double sf(double x) const override { return cdf(-x); }
  double mean() const override { return 0.0; }
  double variance() const override;
  std::vector<double> kinks() const override;
  DistPtr affine(double shift, double scale) const override;

 private:
  double sigma_;
  double gamma_;
  double k_;
  double log_norm_;
};

class LogNormal final : public Distribution {
 public:
  LogNormal(double mu, double sigma);
  std::string kind() const override { return "log-normal"; }
  std::vector<double> params() const override { return {mu_, sigma_}; }
  Support support() const override;
  double pdf(double x) const override;
  double log_pdf(double x) const override;
  double cdf(double x) const override;
  double sf(double x) const override;
  double quantile(double p) const override;
  double upper_quantile(double q) const override;
  double mean() const override;
  double variance() const override;
  double sample(Rng& rng) const override;
  DistPtr affine(double shift, double scale) const override;

 private:
  double mu_;
  double sigma_;
};

/// Density sigma^k / Gamma(k) x^(-k-1) exp(-sigma / x).
class InverseGamma final : public Distribution {
 public:
  InverseGamma(double k, double sigma);
  std::string kind() const override { return "inverse-gamma"; }
  std::vector<double> params() const override { return {k_, sigma_}; }
  Support support() const override;
  double pdf(double x) const override;
  double log_pdf(double x) const override;
  double cdf(double x) const override;
  double sf(double x) const override;
  double mean() const override;
  double variance() const override;
  bool has_first_moment() const override { return k_ > 1.0; }
  bool has_finite_variance() const override { return k_ > 2.0; }
  DistPtr affine(double shift, double scale) const override;

 private:
  double k_;
  double sigma_;
};

/// Density k m^k / x^(k+1) on [m, inf).
class Pareto final : public Distribution {
 public:
  Pareto(double k, double m);
  std::string kind() const override { return "pareto"; }
  std::vector<double> params() const override { return {k_, m_}; }
  Support support() const override;
  double pdf(double x) const override;
  double log_pdf(double x) const override;
  double cdf(double x) const override;
  double sf(double x) const override;
  double quantile(double p) const override;
  double upper_quantile(double q) const override;
  double mean() const override;
  double variance() const override;
  bool has_first_moment() const override { return k_ > 1.0; }
  bool has_finite_variance() const override { return k_ > 2.0; }
  std::vector<double> kinks() const override { return {m_}; }
  DistPtr affine(double shift, double scale) const override;

 private:
  double k_;
  double m_;
};

/// Mean mu, shape k.
class InverseGaussian final : public Distribution {
 public:
  InverseGaussian(double mu, double k);
  std::string kind() const override { return "inverse-gaussian"; }
  std::vector<double> params() const override { return {mu_, k_}; }
  Support support() const override;
  double pdf(double x) const override;
  double log_pdf(double x) const override;
  double cdf(double x) const override;
  double mean() const override { return mu_; }
  double variance() const override { return mu_ * mu_ * mu_ / k_; }

 private:
  double mu_;
  double k_;
};

class Beta final : public Distribution {
 public:
  Beta(double a, double b);
  std::string kind() const override { return "beta"; }
  std::vector<double> params() const override { return {a_, b_}; }
  Support support() const override;
  double pdf(double x) const override;
  double log_pdf(double x) const override;
  double cdf(double x) const override;
  double sf(double x) const override;
  double mean() const override { return a_ / (a_ + b_); }
  double variance() const override;

 private:
  double a_;
  double b_;
  double log_beta_;
};

class Poisson final : public Distribution {
 public:
  explicit Poisson(double lambda);
  std::string kind() const override { return "poisson"; }
  std::vector<double> params() const override { return {lambda_}; }
  Support support() const override;
  double pdf(double x) const override;
  double log_pdf(double x) const override;
  double cdf(double x) const override;
  double sf(double x) const override;
  double quantile(double p) const override;
  double upper_quantile(double q) const override;
  double mean() const override { return lambda_; }
  double variance() const override { return lambda_; }
  double sample(Rng& rng) const override;
  DistPtr affine(double shift, double scale) const override;

 private:
  double lambda_;
};

class Cauchy final : public Distribution {
 public:
  Cauchy(double mu, double sigma);
  std::string kind() const override { return "cauchy"; }
  std::vector<double> params() const override { return {mu_, sigma_}; }
  Support support() const override;
  double pdf(double x) const override;
  double log_pdf(double x) const override;
  double cdf(double x) const override;
  double sf(double x) const override;
  double quantile(double p) const override;
  double upper_quantile(double q) const override;
  double mean() const override;
  double variance() const override;
  bool has_first_moment() const override { return false; }
  DistPtr affine(double shift, double scale) const override;

 private:
  double mu_;
  double sigma_;
};

/// Density p(1-p)/sigma exp((1-p)(x-mu)/sigma) left of mu and
/// p(1-p)/sigma exp(-p(x-mu)/sigma) right of it.
class AsymmetricLaplace final : public Distribution {
 public:
  AsymmetricLaplace(double mu, double sigma, double p);
  std::string kind() const override { return "asymmetric-laplace"; }
  std::vector<double> params() const override { return {mu_, sigma_, p_}; }
  Support support() const override;
  double pdf(double x) const override;
  double log_pdf(double x) const override;
  double cdf(double x) const override;
  double sf(double x) const override;
  double quantile(double p) const override;
  double upper_quantile(double q) const override;
  double mean() const override;
  double variance() const override;
  std::vector<double> kinks() const override { return {mu_}; }
  DistPtr affine(double shift, double scale) const override;

 private:
  double mu_;
  double sigma_;
  double p_;
};

class Uniform final : public Distribution {
 public:
  Uniform(double a, double b);
  std::string kind() const override { return "uniform"; }
  std::vector<double> params() const override { return {a_, b_}; }
  Support support() const override;
  double pdf(double x) const override;
  double cdf(double x) const override;
  double quantile(double p) const override;
  double upper_quantile(double q) const override;
  double mean() const override { return 0.5 * (a_ + b_); }
  double variance() const override { return (b_ - a_) * (b_ - a_) / 12.0; }
  std::vector<double> kinks() const override { return {a_, b_}; }
  DistPtr affine(double shift, double scale) const override;

 private:
  double a_;
  double b_;
};

/// Law of shift + scale * X for an arbitrary continuous base law.
class Affine final : public Distribution {
 public:
  Affine(DistPtr base, double shift, double scale);
  std::string kind() const override { return "affine"; }
  std::vector<double> params() const override;
  Support support() const override;
  double pdf(double x) const override;
  double log_pdf(double x) const override;
  double cdf(double x) const override;
  double sf(double x) const override;
  double quantile(double p) const override;
  double upper_quantile(double q) const override;
  double mean() const override;
  double variance() const override;
  bool has_first_moment() const override { return base_->has_first_moment(); }
  bool has_finite_variance() const override { return base_->has_finite_variance(); }
  std::vector<double> kinks() const override;
  double sample(Rng& rng) const override;
  DistPtr affine(double shift, double scale) const override;

  const DistPtr& base() const { return base_; }
  double shift() const { return shift_; }
  double scale() const { return scale_; }

 protected:
  std::vector<double> compute_breakpoints() const override;

 private:
  DistPtr base_;
  double shift_;
  double scale_;
};

/// Finite mixture of continuous laws.
class Mixture final : public Distribution {
 public:
  Mixture(std::vector<DistPtr> components, std::vector<double> weights);
  std::string kind() const override { return "mixture"; }
  std::vector<double> params() const override { return weights_; }
  Support support() const override;
  double pdf(double x) const override;
  double cdf(double x) const override;
  double sf(double x) const override;
  double mean() const override;
  double variance() const override;
  bool has_first_moment() const override;
  bool has_finite_variance() const override;
  std::vector<double> kinks() const override;
  double sample(Rng& rng) const override;

 protected:
  std::vector<double> compute_breakpoints() const override;

 private:
  std::vector<DistPtr> components_;
  std::vector<double> weights_;
};

/// Builds a catalog law. Missing trailing parameters take defaults (unit
/// scale, zero location). Kind names are case-insensitive and accept '_'.
DistPtr make_family(std::string_view kind, const std::vector<double>& params);

/// Parses "kind:p1,p2,...", e.g. "normal:0,1".
DistPtr parse_distribution(std::string_view spec);

/// Canonical kind name, or throws UnknownKind.
std::string canonical_kind(std::string_view kind);

/// Union of the breakpoint ladders of two laws.
std::vector<double> merged_breakpoints(const Distribution& a, const Distribution& b);

class ScaleFamily {
 public:
  explicit ScaleFamily(DistPtr base, std::string name = "");
  DistPtr member(double sigma) const;
  const DistPtr& base() const { return base_; }
  const std::string& name() const { return name_; }

 private:
  DistPtr base_;
  std::string name_;
};

class LocationFamily {
 public:
  explicit LocationFamily(DistPtr base, std::string name = "");
  DistPtr member(double mu) const;
  const DistPtr& base() const { return base_; }
  const std::string& name() const { return name_; }

 private:
  DistPtr base_;
  std::string name_;
};

/// "weibull-scale:2" builds the scale family whose base is weibull(2, 1).
ScaleFamily parse_scale_family(std::string_view spec);
/// "exponential-location" builds the location family of exponential(1).
LocationFamily parse_location_family(std::string_view spec);

}  // namespace asymscore::families

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

// Numerical engines for the direction of loss asymmetry under scale,
// location and natural-parameter misspecification.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "asymscore/divergence.hpp"
#include "asymscore/expfam.hpp"
#include "asymscore/families.hpp"
#include "asymscore/lambert_w.hpp"
#include "asymscore/scoring.hpp"

namespace asymscore::asymmetry {

using families::DistPtr;
using scoring::LossSpec;

/// over_penalized: the upward deviation (sigma, mu, theta * eta) costs
/// more than its mirror.
enum class Comparison { kOverPenalized, kUnderPenalized, kSymmetric };
std::string to_string(Comparison c);

struct AsymmetryVerdict {
  Comparison comparison = Comparison::kSymmetric;
  double lhs = 0.0;    // expected loss of the upward deviation
  double rhs = 0.0;    // expected loss of the mirror deviation
  double d_lhs = 0.0;  // divergence of the upward deviation
  double d_rhs = 0.0;  // divergence of the mirror deviation
  double margin = 0.0;
  double tolerance = 0.0;
  /// Set when a precondition check failed but the verdict was still
  /// computed (for example an asymmetric base under log loss).
  bool flagged = false;
  std::string note;
};

/// Classifies from two divergences; the tolerance is relative (1e-6 by
/// default) to the larger divergence. Two infinite values are symmetric.
AsymmetryVerdict classify(double d_lhs, double d_rhs, double self_loss = 0.0,
                          double rel_tol = 1e-6);

/// Exponent gamma of the scaling function h(sigma) = sigma^gamma. Throws
/// Unsupported for spherical loss and non-power weights.
double scaling_exponent(const LossSpec& spec);

struct ScalingFit {
  double slope = 0.0;
  std::vector<double> sigmas;
  std::vector<double> ratios;  // d(F_s, G_s) / d(F, G)
};

/// Least-squares slope of log(d(F_s, G_s) / d(F, G)) against log s.
ScalingFit fit_scaling_exponent(const LossSpec& spec, const DistPtr& F, const DistPtr& G,
                                const std::vector<double>& sigmas = {0.5, 1.0, 2.0, 4.0});

/// Compares l(G_sigma, G) with l(G_{1/sigma}, G) for G = family.member(1).
AsymmetryVerdict scale_verdict(const LossSpec& spec, const families::ScaleFamily& family,
                               double sigma);

/// Compares l(G_mu, G) with l(G_{-mu}, G). Under log loss the base is
/// probed for symmetry about its median; an asymmetric base flags the
/// verdict with AsymmetricBaseForLogLoss.
AsymmetryVerdict location_verdict(const LossSpec& spec, const families::LocationFamily& family,
                                  double mu);

/// True when the density is symmetric about its median at probe points.
bool has_symmetric_density(const families::Distribution& base);

enum class Monotonicity { kIncreasing, kDecreasing, kConstant, kMixed };
std::string to_string(Monotonicity m);

/// Sign vote over consecutive differences; all |diff| < 1e-10 is constant.
Monotonicity classify_monotonicity(const std::vector<double>& values);

struct ExpFamVerdict {
  AsymmetryVerdict verdict;
  Monotonicity probe = Monotonicity::kMixed;
};

/// Natural-parameter verdict from exact Bregman divergences: d_A(theta eta,
/// eta) against d_A(eta / theta, eta) on (0, inf), or d_A(eta + theta, eta)
/// against d_A(eta - theta, eta) on the real line. The probe reports the
/// class of u^3 A''(u) on a 64-point log grid over [eta / theta, theta eta],
/// respectively of A''(eta + u) - A''(eta - u) for u in [0, theta].
ExpFamVerdict expfam_verdict(const families::ExpFamDescriptor& desc, double eta, double theta);

/// Verdict in the conventional parameter c: compares the members at
/// theta c and c / theta with the target at c.
AsymmetryVerdict expfam_conventional_verdict(const families::ExpFamDescriptor& desc,
                                             double conventional, double theta);

/// Roots eta1 of l(p_eta1, p_eta) = l(p_eta2, p_eta) for a log-partition of
/// the form c1 log eta + c2: the trivial root eta2 and the other one from
/// the Lambert function. Returns {eta2, other}.
std::pair<double, double> loss_diff_root(const families::ExpFamDescriptor& desc, double eta,
                                         double eta2);

enum class TrichotomyMode { kScale, kLocation };

/// Power-weighted threshold CRPS verdict for the scale family (param =
/// sigma) or location family (param = mu), computed numerically.
AsymmetryVerdict power_crps_trichotomy(double alpha, TrichotomyMode mode,
                                       const families::ScaleFamily* scale_family,
                                       const families::LocationFamily* location_family,
                                       double param);

}  // namespace asymscore::asymmetry

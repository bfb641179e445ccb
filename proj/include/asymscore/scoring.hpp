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

// Pointwise losses l(F, y) for seven scoring rules.

#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "asymscore/families.hpp"
#include "asymscore/forecasts.hpp"

namespace asymscore::scoring {

using families::Distribution;
using families::DistPtr;

enum class LossTag { kLog, kQuadratic, kSpherical, kCrps, kTwCrps, kEnergy, kDs };

std::string to_string(LossTag tag);
LossTag parse_loss_tag(std::string_view text);
const std::vector<LossTag>& all_loss_tags();

/// Threshold weight w with antiderivative v. Power weights w(x) = x^alpha
/// are defined on [0, inf) unless alpha is an even integer >= 0, in which
/// case they cover the real line.
class WeightFunction {
 public:
  using Fn = std::function<double(double)>;

  WeightFunction();  // w = 1
  static WeightFunction power(double alpha);
  static WeightFunction tabulated(Fn w, Fn v, std::string name = "tabulated");

  bool is_power() const { return power_; }
  double alpha() const { return alpha_; }
  bool is_constant() const { return power_ && alpha_ == 0.0; }
  /// True when the weight vanishes on (-inf, 0).
  bool nonnegative_domain() const;
  double w(double x) const;
  double v(double x) const;

  /// Support and antiderivative checks against a forecast. Throws
  /// NegativeSupportPowerWeight or InvalidWeight.
  void check_against(const Distribution& F) const;
  std::string describe() const;

 private:
  bool power_ = true;
  double alpha_ = 0.0;
  Fn w_;
  Fn v_;
  std::string name_;
};

struct LossSpec {
  LossTag tag = LossTag::kCrps;
  WeightFunction weight;
  double beta = 1.0;

  static LossSpec of(LossTag tag);
  static LossSpec energy(double beta);
  static LossSpec twcrps(WeightFunction w);

  /// Throws ParameterOutOfDomain for beta outside (0, 2).
  void validate() const;
  std::string describe() const;
};

/// Parses "log", "crps", "energy:1.5", "twcrps:2" (power weight), ...
LossSpec parse_loss(std::string_view text);

/// Exponent c with l(a + bF, a + by) = b^c l(F, y) for the homogeneous
/// losses, or the additive law for log (log b) and ds (2 log b). Returns
/// false for losses without a law (twcrps with a non-constant weight).
bool loss_law(const LossSpec& spec, double scale, double& factor, double& offset);

/// Evaluates one forecast against many outcomes, caching forecast-level
/// quantities (density norm, pair expectations, moments).
class Scorer {
 public:
  Scorer(const LossSpec& spec, DistPtr forecast);
  double operator()(double y) const;
  const LossSpec& spec() const { return spec_; }
  const DistPtr& forecast() const { return forecast_; }

 private:
  double base_score(double y) const;

  LossSpec spec_;
  DistPtr forecast_;
  DistPtr base_;
  double factor_ = 1.0;
  double offset_ = 0.0;
  double shift_ = 0.0;
  double scale_ = 1.0;
  double norm2_ = 0.0;
  double self_energy_ = 0.0;
  double mean_ = 0.0;
  double variance_ = 0.0;
};

double score(const LossSpec& spec, const DistPtr& F, double y);
double score(const LossSpec& spec, const forecasts::Ensemble& E, const std::vector<double>& y);
double score(const LossSpec& spec, const forecasts::Ensemble& E, double y);

/// (integral form, expectation form) of the CRPS, each by its own
/// quadrature route.
std::pair<double, double> crps_both_forms(const DistPtr& F, double y);

double twcrps_score(const DistPtr& F, double y, const WeightFunction& w);
/// (definitional integral, E|v(X) - v(y)| - E|v(X) - v(X')| / 2).
std::pair<double, double> twcrps_both_forms(const DistPtr& F, double y, const WeightFunction& w);

double energy_score(const forecasts::Ensemble& E, const std::vector<double>& y, double beta);

/// int f^2.
double density_norm2(const Distribution& F);
/// E|X - y|^beta.
double abs_moment(const Distribution& F, double y, double beta);
/// E|X - X'|^beta for independent copies.
double self_energy(const Distribution& F, double beta);
/// int w G (1 - G).
double weighted_gini(const Distribution& G, const WeightFunction& w);

}  // namespace asymscore::scoring

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

// Expected loss under a random test-time parameter and the scale or
// natural parameter that minimizes it.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "asymscore/asymmetry.hpp"
#include "asymscore/expfam.hpp"
#include "asymscore/families.hpp"
#include "asymscore/scoring.hpp"

namespace asymscore::hedging {

using scoring::LossSpec;

/// Law of the test-time parameter. On (0, inf) the log of the draw is
/// symmetric about log(center); on the real line (natural parameters of
/// families with omega = R) the draw itself is symmetric about center.
struct ShiftLaw {
  enum class Form { kTwoPoint, kLogUniform, kLogNormal };
  Form form = Form::kTwoPoint;
  double spread = 2.0;  // a for two_point / log_uniform, s for log_normal
  double center = 1.0;

  static ShiftLaw two_point(double a, double center = 1.0);
  static ShiftLaw log_uniform(double a, double center = 1.0);
  static ShiftLaw log_normal(double s, double center = 1.0);

  std::string describe() const;
};

/// Parses "two-point:2", "log-uniform:3", "log-normal:0.5", each with an
/// optional "@center" suffix.
ShiftLaw parse_shift_law(std::string_view text);

struct Node {
  double value;
  double weight;
};

/// Quadrature nodes of the law: two atoms for two_point, 64 nodes
/// otherwise. Multiplicative shifts need a > 1 (resp. s > 0) and throw
/// NotAShift on a degenerate law.
std::vector<Node> multiplicative_nodes(const ShiftLaw& law);
/// Same laws applied additively (center +- a, uniform on [c - a, c + a],
/// normal with sd s); needs a > 0.
std::vector<Node> additive_nodes(const ShiftLaw& law);

enum class Direction { kInflate, kDeflate, kNone, kIndeterminate };
std::string to_string(Direction d);

struct HedgeResult {
  Direction direction = Direction::kNone;
  double optimum = 0.0;  // sigma* for scale families, eta* for natural parameters
  double optimum_conventional = 0.0;
  double baseline_loss = 0.0;
  double hedged_loss = 0.0;
  bool at_boundary = false;
};

/// E l(G_sigma, G_{sigma_test}) with sigma_test drawn from the law.
double shifted_expected_loss(const LossSpec& spec, const families::ScaleFamily& family,
                             const ShiftLaw& shift, double sigma);

struct DirectionEvidence {
  Direction direction = Direction::kIndeterminate;
  asymmetry::Monotonicity monotonicity = asymmetry::Monotonicity::kMixed;
  std::vector<double> sigmas;
  std::vector<double> ratios;  // (h(sigma) - 1) / d(G_sigma, G)
};

/// Classifies (h - 1) / f on 48 log-spaced points of [1.05, 8], with
/// f(sigma) = d(G_sigma, G): increasing deflates, decreasing inflates.
/// Throws NotSymmetricRescalable unless the loss is crps, energy,
/// quadratic or power-weighted threshold CRPS.
DirectionEvidence hedge_scale_direction(const LossSpec& spec, const families::ScaleFamily& family);

/// Golden-section search of shifted_expected_loss over log sigma in
/// [center / 16, 16 center] to 1e-6. Same loss restriction as above.
HedgeResult optimal_scale(const LossSpec& spec, const families::ScaleFamily& family,
                          const ShiftLaw& shift);

/// E l(p_eta, p_{eta_test}) under log loss, in excess of the entropy term:
/// the expected Bregman divergence E d_A(eta, eta_test).
double expfam_expected_divergence(const families::ExpFamDescriptor& desc, const ShiftLaw& shift,
                                  double eta);

/// eta* = (A')^{-1}(E A'(eta_test)). The direction compares the
/// conventional parameters of eta* and of the center.
HedgeResult hedge_expfam_optimum(const families::ExpFamDescriptor& desc, const ShiftLaw& shift);

}  // namespace asymscore::hedging

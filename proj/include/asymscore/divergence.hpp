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

// Expected losses l(F, G) = E l(F, Y), Y ~ G, and the induced divergences
// d(F, G) = l(F, G) - l(G, G).

#pragma once

#include <cstdint>
#include <string>

#include "asymscore/expfam.hpp"
#include "asymscore/random.hpp"
#include "asymscore/scoring.hpp"

namespace asymscore::divergence {

using families::DistPtr;
using scoring::LossSpec;

enum class Method { kClosedForm, kQuadrature, kMonteCarlo };
std::string to_string(Method m);

struct DivergenceValue {
  double value = 0.0;
  Method method = Method::kQuadrature;
  double error_estimate = 0.0;
};

struct MonteCarloOptions {
  std::size_t draws = 100000;
  std::uint64_t seed = kDefaultSeed;
};

/// Expected loss by the cheapest available route: closed forms for
/// matched normal or exponential pairs and ds, otherwise divergence plus
/// self-score, or a direct integral against G.
double expected_loss(const LossSpec& spec, const DistPtr& F, const DistPtr& G);

/// Oracle route: the pointwise loss integrated against G by quadrature
/// (summation for lattice G).
double expected_loss_quadrature(const LossSpec& spec, const DistPtr& F, const DistPtr& G);

/// Plain Monte Carlo mean of l(F, Y) with its standard error.
DivergenceValue expected_loss_monte_carlo(const LossSpec& spec, const DistPtr& F, const DistPtr& G,
                                          const MonteCarloOptions& options = {});

/// Divergence from its direct formula.
DivergenceValue div(const LossSpec& spec, const DistPtr& F, const DistPtr& G);

/// Oracle route: expected_loss_quadrature(F, G) - expected_loss_quadrature(G, G).
double div_by_subtraction(const LossSpec& spec, const DistPtr& F, const DistPtr& G);

/// Monte Carlo divergence E[l(F, Y) - l(G, Y)] from paired draws.
DivergenceValue div_monte_carlo(const LossSpec& spec, const DistPtr& F, const DistPtr& G,
                                const MonteCarloOptions& options = {});

/// d(F1, G) - d(F2, G) estimated with common random numbers.
DivergenceValue div_difference_monte_carlo(const LossSpec& spec, const DistPtr& F1,
                                           const DistPtr& F2, const DistPtr& G,
                                           const MonteCarloOptions& options = {});

/// KL divergence of member(eta_g) from member(eta_f) as a Bregman
/// divergence of the log-partition.
double expfam_kl(const families::ExpFamDescriptor& desc, double eta_f, double eta_g);

/// int f g.
double density_inner(const families::Distribution& F, const families::Distribution& G);

}  // namespace asymscore::divergence

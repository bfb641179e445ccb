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

// One-dimensional numerical integration.

#pragma once

#include <functional>
#include <vector>

namespace asymscore::numerics {

using Integrand = std::function<double(double)>;

struct QuadOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_subdivisions = 10000;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
  bool converged = true;
};

/// Global adaptive Gauss-Kronrod 7/15 over the sorted list of breakpoints.
/// The first and last points may be -inf / +inf; those pieces are mapped to
/// [0, 1) by x = a + s t / (1 - t) with s taken from the neighbouring
/// breakpoint spacing. An infinite integrand value makes the result
/// infinite; a NaN raises NonIntegrable.
QuadResult integrate(const Integrand& f, std::vector<double> points,
                     const QuadOptions& options = {});

inline QuadResult integrate(const Integrand& f, double a, double b,
                            const QuadOptions& options = {}) {
  return integrate(f, std::vector<double>{a, b}, options);
}

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1].
const GaussRule& gauss_legendre(int n);

/// Gauss-Hermite rule for the weight exp(-x^2) on the real line.
const GaussRule& gauss_hermite(int n);

/// Expectation of f(Z) for Z ~ N(0, 1) using an n-point Gauss-Hermite rule.
double normal_expectation(const Integrand& f, int n = 64);

}  // namespace asymscore::numerics

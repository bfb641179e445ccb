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

// Special functions used by the distribution catalog and the
// exponential-family descriptors.

#pragma once

namespace asymscore::numerics {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kSqrtPi = 1.77245385090551602730;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;
inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// log|Gamma(x)| via a Lanczos approximation (g = 7, 9 terms) with
/// reflection for x < 1/2. Relative error below 1e-13 on x > 0.
double log_gamma(double x);

/// Digamma psi(x) for x > 0: upward recurrence then asymptotic series.
double digamma(double x);

/// Trigamma psi'(x) = sum_{n>=0} 1/(x+n)^2 for x > 0. The first terms are
/// summed directly, the remainder by Euler-Maclaurin. Throws on x <= 0.
double trigamma(double x);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed
/// without cancellation in the upper tail.
double gamma_q(double a, double x);

/// Regularized incomplete beta I_x(a, b).
double beta_inc(double a, double b, double x);

double normal_pdf(double z);
double normal_cdf(double z);
/// Inverse standard normal CDF (Acklam rational start + Halley polish).
double normal_quantile(double p);

/// Confluent hypergeometric 1F1(a; b; z), evaluated by power series with a
/// Kummer transformation for negative z. Intended for moderate |z| (< 700).
double hyp1f1(double a, double b, double z);

/// E|Z|^beta for Z ~ N(m, s^2), beta > -1.
double normal_abs_moment(double m, double s, double beta);

}  // namespace asymscore::numerics

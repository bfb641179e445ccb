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

#include "asymscore/special.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "asymscore/error.hpp"

namespace asymscore::numerics {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 100000;

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// zeta(k) for k = 2..31, built once from a direct sum with an
// Euler-Maclaurin tail.
const std::array<double, 32>& zeta_table() {
  static const std::array<double, 32> table = [] {
    std::array<double, 32> z{};
    constexpr int kTerms = 30;
    for (int k = 2; k < 32; ++k) {
      double sum = 0.0;
      for (int n = kTerms - 1; n >= 1; --n) sum += std::pow(n, -k);
      const double nn = kTerms;
      // Tail sum_{n>=N} n^-k by Euler-Maclaurin with Bernoulli numbers.
      static constexpr double kB[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66};
      sum += std::pow(nn, 1.0 - k) / (k - 1) + 0.5 * std::pow(nn, -k);
      double rising = k;  // k (k+1) ... (k + 2j - 2)
      double factorial = 2.0;
      for (int j = 1; j <= 5; ++j) {
        sum += kB[j - 1] / factorial * rising * std::pow(nn, -k - 2.0 * j + 1.0);
        rising *= (k + 2.0 * j - 1.0) * (k + 2.0 * j);
        factorial *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
      }
      z[k] = sum;
    }
    return z;
  }();
  return table;
}

// log Gamma(1 + e) for |e| <= 0.25 via its Taylor series.
double log_gamma_1p_series(double e) {
  const auto& zeta = zeta_table();
  double sum = -kEulerGamma * e;
  double power = -e;
  for (int k = 2; k < 32; ++k) {
    power *= -e;  // (-e)^k
    const double term = zeta[k] * power / k;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double log_gamma_lanczos(double x) {
  x -= 1.0;
  double a = kLanczos[0];
  const double t = x + 7.5;
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i);
  return kLogSqrt2Pi + (x + 0.5) * std::log(t) - t + std::log(a);
}

// Series for P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
}

// Continued fraction for Q(a, x), valid for x >= a + 1 (modified Lentz).
double gamma_q_fraction(double a, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
}

double beta_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m < kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double log_gamma(double x) {
  if (std::isnan(x)) return x;
  if (x <= 0.0 && x == std::floor(x)) {
    return std::numeric_limits<double>::infinity();
  }
  if (x < 0.5) {
    return std::log(kPi / std::abs(std::sin(kPi * x))) - log_gamma(1.0 - x);
  }
  if (std::abs(x - 1.0) <= 0.25) return log_gamma_1p_series(x - 1.0);
  if (std::abs(x - 2.0) <= 0.25) {
    return std::log1p(x - 2.0) + log_gamma_1p_series(x - 2.0);
  }
  return log_gamma_lanczos(x);
}

double digamma(double x) {
  if (!(x > 0.0)) {
    throw Error(ErrorCode::kParameterOutOfDomain, "digamma needs x > 0");
  }
  double result = 0.0;
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double series =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 -
                                      inv2 * (1.0 / 132 -
                                              inv2 * (691.0 / 32760 -
                                                      inv2 / 12.0))))));
  return result + std::log(x) - 0.5 * inv - series;
}

double trigamma(double x) {
  if (!(x > 0.0)) {
    throw Error(ErrorCode::kParameterOutOfDomain, "trigamma needs x > 0");
  }
  // Direct terms until the shifted argument reaches 20.
  double head = 0.0;
  while (x < 20.0) {
    head += 1.0 / (x * x);
    x += 1.0;
  }
  // Euler-Maclaurin tail of sum_{n>=0} 1/(z+n)^2 with Bernoulli numbers.
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double tail =
      inv + 0.5 * inv2 +
      inv * inv2 *
          (1.0 / 6 -
           inv2 * (1.0 / 30 -
                   inv2 * (1.0 / 42 -
                           inv2 * (1.0 / 30 -
                                   inv2 * (5.0 / 66 -
                                           inv2 * (691.0 / 2730 -
                                                   inv2 * 7.0 / 6.0))))));
  return head + tail;
}

double gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0) {
    throw Error(ErrorCode::kParameterOutOfDomain, "gamma_p domain");
  }
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_fraction(a, x);
}

double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) {
    throw Error(ErrorCode::kParameterOutOfDomain, "gamma_q domain");
  }
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

double beta_inc(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(ErrorCode::kParameterOutOfDomain, "beta_inc domain");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front =
      std::exp(log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
               a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_fraction(a, b, x) / a;
  return 1.0 - front * beta_fraction(b, a, 1.0 - x) / b;
}

double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    throw Error(ErrorCode::kParameterOutOfDomain, "normal_quantile needs p in [0,1]");
  }
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;
  double x;
  if (p < kLow) {
    const double q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p <= 1 - kLow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    const double q = std::sqrt(-2 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  // Two Halley steps; residual taken on the smaller tail to keep precision.
  for (int i = 0; i < 2; ++i) {
    const double err = (p < 0.5) ? normal_cdf(x) - p : (1.0 - p) - normal_cdf(-x);
    const double u = err * std::sqrt(2 * kPi) * std::exp(0.5 * x * x);
    x -= u / (1 + 0.5 * x * u);
  }
  return x;
}

double hyp1f1(double a, double b, double z) {
  if (z < 0.0) return std::exp(z) * hyp1f1(b - a, b, -z);
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < kMaxIter; ++n) {
    term *= (a + n) / (b + n) * z / (n + 1);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && n > z) break;
  }
  return sum;
}

double normal_abs_moment(double m, double s, double beta) {
  if (!(beta > -1.0)) {
    throw Error(ErrorCode::kParameterOutOfDomain, "abs moment needs beta > -1");
  }
  if (s == 0.0) return std::pow(std::abs(m), beta);
  const double z = 0.5 * (m / s) * (m / s);
  if (z < 600.0) {
    return std::pow(s, beta) * std::pow(2.0, 0.5 * beta) *
           std::exp(log_gamma(0.5 * (beta + 1.0))) / kSqrtPi *
           hyp1f1(-0.5 * beta, 0.5, -z);
  }
  // Far from zero the sign never flips: E|m + sW|^b expanded in r = s/m.
  const double r2 = (s / m) * (s / m);
  double coeff = 1.0;
  double sum = 1.0;
  double falling = 1.0;
  double power = 1.0;
  for (int k = 1; k <= 6; ++k) {
    falling *= (beta - (2 * k - 2)) * (beta - (2 * k - 1));
    coeff = falling;
    // (2k-1)!! / (2k)! = 1 / (2^k k!)
    double denom = 1.0;
    for (int j = 1; j <= k; ++j) denom *= 2.0 * j;
    power *= r2;
    sum += coeff / denom * power;
  }
  return std::pow(std::abs(m), beta) * sum;
}

}  // namespace asymscore::numerics

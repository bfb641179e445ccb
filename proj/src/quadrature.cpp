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

#include "asymscore/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <queue>

#include "asymscore/error.hpp"
#include "asymscore/special.hpp"

namespace asymscore::numerics {

namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kInf = std::numeric_limits<double>::infinity();

struct InfiniteValue {
  double value;
};

// A segment in the integration variable t, with its map back to x.
struct Piece {
  enum class Map { kIdentity, kUpperTail, kLowerTail } map;
  double anchor;
  double scale;
};

struct Interval {
  double a;
  double b;
  double value;
  double error;
  int piece;
  bool operator<(const Interval& other) const { return error < other.error; }
};

double evaluate(const Integrand& f, const Piece& piece, double t) {
  double x;
  double jac;
  switch (piece.map) {
    case Piece::Map::kIdentity:
      x = t;
      jac = 1.0;
      break;
    case Piece::Map::kUpperTail: {
      const double u = 1.0 - t;
      x = piece.anchor + piece.scale * t / u;
      jac = piece.scale / (u * u);
      break;
    }
    case Piece::Map::kLowerTail:
    default: {
      const double u = 1.0 - t;
      x = piece.anchor - piece.scale * t / u;
      jac = piece.scale / (u * u);
      break;
    }
  }
  const double y = f(x);
  if (std::isnan(y)) {
    throw Error(ErrorCode::kNonIntegrable, "integrand is NaN");
  }
  if (std::isinf(y)) throw InfiniteValue{y};
  if (y == 0.0) return 0.0;
  return y * jac;
}

void kronrod(const Integrand& f, const Piece& piece, Interval& iv) {
  const double center = 0.5 * (iv.a + iv.b);
  const double half = 0.5 * (iv.b - iv.a);
  const double fc = evaluate(f, piece, center);
  double res_k = fc * kWgk[7];
  double res_g = fc * kWg[3];
  double res_abs = std::abs(res_k);
  double fv1[7];
  double fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = evaluate(f, piece, center - dx);
    fv2[j] = evaluate(f, piece, center + dx);
    res_k += kWgk[j] * (fv1[j] + fv2[j]);
    res_abs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) res_g += kWg[j / 2] * (fv1[j] + fv2[j]);
  }
  const double mean = 0.5 * res_k;
  double res_asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    res_asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  }
  res_asc *= std::abs(half);
  res_abs *= std::abs(half);
  double err = std::abs((res_k - res_g) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  constexpr double kEpsMach = std::numeric_limits<double>::epsilon();
  if (res_abs > std::numeric_limits<double>::min() / (50 * kEpsMach)) {
    err = std::max(50 * kEpsMach * res_abs, err);
  }
  iv.value = res_k * half;
  iv.error = err;
}

std::vector<Piece> build_pieces(const std::vector<double>& pts,
                                std::vector<Interval>& initial) {
  std::vector<Piece> pieces;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = pts[i];
    const double b = pts[i + 1];
    if (!(b > a)) continue;
    if (std::isinf(a) && std::isinf(b)) {
      pieces.push_back({Piece::Map::kLowerTail, 0.0, 1.0});
      initial.push_back({0.0, 1.0, 0, 0, static_cast<int>(pieces.size() - 1)});
      pieces.push_back({Piece::Map::kUpperTail, 0.0, 1.0});
      initial.push_back({0.0, 1.0, 0, 0, static_cast<int>(pieces.size() - 1)});
    } else if (std::isinf(a)) {
      double s = 1.0;
      if (i + 2 < n && std::isfinite(pts[i + 2])) s = pts[i + 2] - b;
      s = std::max(s, 1e-6 * std::max(1.0, std::abs(b)));
      pieces.push_back({Piece::Map::kLowerTail, b, s});
      initial.push_back({0.0, 1.0, 0, 0, static_cast<int>(pieces.size() - 1)});
    } else if (std::isinf(b)) {
      double s = 1.0;
      if (i >= 1 && std::isfinite(pts[i - 1])) s = a - pts[i - 1];
      s = std::max(s, 1e-6 * std::max(1.0, std::abs(a)));
      pieces.push_back({Piece::Map::kUpperTail, a, s});
      initial.push_back({0.0, 1.0, 0, 0, static_cast<int>(pieces.size() - 1)});
    } else {
      if (pieces.empty() || pieces.back().map != Piece::Map::kIdentity) {
        pieces.push_back({Piece::Map::kIdentity, 0.0, 1.0});
      }
      initial.push_back({a, b, 0, 0, static_cast<int>(pieces.size() - 1)});
    }
  }
  return pieces;
}

}  // namespace

QuadResult integrate(const Integrand& f, std::vector<double> points,
                     const QuadOptions& options) {
  for (double p : points) {
    if (std::isnan(p)) throw Error(ErrorCode::kNonIntegrable, "NaN breakpoint");
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  QuadResult result;
  if (points.size() < 2) return result;

  std::vector<Interval> initial;
  const std::vector<Piece> pieces = build_pieces(points, initial);

  try {
    std::priority_queue<Interval> heap;
    double total = 0.0;
    double total_err = 0.0;
    for (Interval& iv : initial) {
      kronrod(f, pieces[iv.piece], iv);
      total += iv.value;
      total_err += iv.error;
      heap.push(iv);
    }
    int subdivisions = 0;
    std::vector<Interval> settled;
    while (!heap.empty() &&
           total_err > std::max(options.abs_tol, options.rel_tol * std::abs(total)) &&
           subdivisions < options.max_subdivisions) {
      Interval worst = heap.top();
      heap.pop();
      const double mid = 0.5 * (worst.a + worst.b);
      if (!(mid > worst.a && mid < worst.b) ||
          (worst.b - worst.a) < 1e-15 * std::max(std::abs(worst.a), std::abs(worst.b))) {
        settled.push_back(worst);
        continue;
      }
      Interval left{worst.a, mid, 0, 0, worst.piece};
      Interval right{mid, worst.b, 0, 0, worst.piece};
      kronrod(f, pieces[worst.piece], left);
      kronrod(f, pieces[worst.piece], right);
      total += left.value + right.value - worst.value;
      total_err += left.error + right.error - worst.error;
      heap.push(left);
      heap.push(right);
      ++subdivisions;
    }
    // Re-sum to shed accumulated rounding from the running updates.
    double sum = 0.0;
    double err = 0.0;
    for (const Interval& iv : settled) {
      sum += iv.value;
      err += iv.error;
    }
    while (!heap.empty()) {
      sum += heap.top().value;
      err += heap.top().error;
      heap.pop();
    }
    result.value = sum;
    result.error = err;
    result.subdivisions = subdivisions;
    result.converged = err <= std::max(options.abs_tol, options.rel_tol * std::abs(sum)) ||
                       err <= 1e-12 * std::abs(sum);
  } catch (const InfiniteValue& inf) {
    result.value = inf.value > 0 ? kInf : -kInf;
    result.error = 0.0;
    result.converged = true;
  }
  return result;
}

namespace {

GaussRule build_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / dp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

GaussRule build_hermite(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pim4 = 0.7511255444649425;  // pi^(-1/4)
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule.nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule.nodes[1];
    } else {
      z = 2.0 * z - rule.nodes[i - 2];
    }
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.nodes[i] = z;
    rule.nodes[n - 1 - i] = -z;
    rule.weights[i] = 2.0 / (pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

template <typename Builder>
const GaussRule& cached_rule(std::map<int, std::unique_ptr<GaussRule>>& cache,
                             std::mutex& mu, int n, Builder build) {
  if (n < 1) throw Error(ErrorCode::kParameterOutOfDomain, "rule size must be >= 1");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::make_unique<GaussRule>(build(n))).first;
  }
  return *it->second;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  static std::mutex mu;
  return cached_rule(cache, mu, n, build_legendre);
}

const GaussRule& gauss_hermite(int n) {
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  static std::mutex mu;
  return cached_rule(cache, mu, n, build_hermite);
}

double normal_expectation(const Integrand& f, int n) {
  const GaussRule& rule = gauss_hermite(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    sum += rule.weights[i] * f(kSqrt2 * rule.nodes[i]);
  }
  return sum / kSqrtPi;
}

}  // namespace asymscore::numerics

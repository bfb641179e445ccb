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

#include "asymscore/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "asymscore/special.hpp"

namespace asymscore::kernels {

namespace {

constexpr std::size_t kParallelThreshold = 256;
constexpr double kWindow = 12.0;

inline double distance_pow(const double* a, const double* b, std::size_t d, double beta) {
  if (d == 1) {
    const double r = std::fabs(a[0] - b[0]);
    return beta == 1.0 ? r : std::pow(r, beta);
  }
  double s = 0.0;
  for (std::size_t k = 0; k < d; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return beta == 2.0 ? s : std::pow(s, 0.5 * beta);
}

inline double weight(const double* w, std::size_t i, std::size_t n) {
  return w ? w[i] : 1.0 / static_cast<double>(n);
}

double kde_point(const std::vector<double>& sorted, double h, double x) {
  auto first = std::lower_bound(sorted.begin(), sorted.end(), x - kWindow * h);
  auto last = std::upper_bound(sorted.begin(), sorted.end(), x + kWindow * h);
  if (first == last) {
    first = sorted.begin();
    last = sorted.end();
  }
  double s = 0.0;
  for (auto it = first; it != last; ++it) s += numerics::normal_pdf((x - *it) / h);
  return s / (static_cast<double>(sorted.size()) * h);
}

}  // namespace

double pair_sum_serial(const double* x, std::size_t n, std::size_t d, const double* w,
                       double beta) {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      row += weight(w, j, n) * distance_pow(x + i * d, x + j * d, d, beta);
    }
    total += weight(w, i, n) * row;
  }
  return 2.0 * total;
}

double pair_sum_parallel(const double* x, std::size_t n, std::size_t d, const double* w,
                         double beta) {
  double total = 0.0;
  const long long nn = static_cast<long long>(n);
#pragma omp parallel for reduction(+ : total) schedule(dynamic, 16)
  for (long long ii = 0; ii < nn; ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    double row = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      row += weight(w, j, n) * distance_pow(x + i * d, x + j * d, d, beta);
    }
    total += weight(w, i, n) * row;
  }
  return 2.0 * total;
}

double pair_sum_sorted(const double* x, std::size_t n, const double* w) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [x](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  // sum_{i<j} w_i w_j (x_j - x_i) accumulated with running weight and moment.
  double cum_w = 0.0;
  double cum_wx = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    const double wj = weight(w, j, n);
    total += wj * (cum_w * x[j] - cum_wx);
    cum_w += wj;
    cum_wx += wj * x[j];
  }
  return 2.0 * total;
}

double pair_sum(const double* x, std::size_t n, std::size_t d, const double* w, double beta) {
  if (d == 1 && beta == 1.0) return pair_sum_sorted(x, n, w);
  return n >= kParallelThreshold ? pair_sum_parallel(x, n, d, w, beta)
                                 : pair_sum_serial(x, n, d, w, beta);
}

double target_sum(const double* x, std::size_t n, std::size_t d, const double* w, const double* y,
                  double beta) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += weight(w, i, n) * distance_pow(x + i * d, y, d, beta);
  return s;
}

void kde_eval_serial(const std::vector<double>& sorted, double h, const std::vector<double>& xs,
                     std::vector<double>& out) {
  out.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = kde_point(sorted, h, xs[i]);
}

void kde_eval_parallel(const std::vector<double>& sorted, double h, const std::vector<double>& xs,
                       std::vector<double>& out) {
  out.resize(xs.size());
  const long long m = static_cast<long long>(xs.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < m; ++i) out[i] = kde_point(sorted, h, xs[i]);
}

}  // namespace asymscore::kernels

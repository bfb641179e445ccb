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

// Hot loops with an OpenMP version and a serial reference version. The
// serial versions are kept for testing and benchmarking; callers use the
// dispatching entry points, which go parallel above a size threshold.

#pragma once

#include <cstddef>
#include <vector>

namespace asymscore::kernels {

/// Sum over all ordered pairs (i, j), diagonal included, of
/// w_i w_j ||x_i - x_j||^beta. Members are rows of a row-major n x d array;
/// a null weight pointer means uniform weights 1/n.
double pair_sum_serial(const double* x, std::size_t n, std::size_t d, const double* w,
                       double beta);
double pair_sum_parallel(const double* x, std::size_t n, std::size_t d, const double* w,
                         double beta);
/// d = 1, beta = 1 reference in O(n log n) from sorted values.
double pair_sum_sorted(const double* x, std::size_t n, const double* w);
double pair_sum(const double* x, std::size_t n, std::size_t d, const double* w, double beta);

/// Sum over i of w_i ||x_i - y||^beta.
double target_sum(const double* x, std::size_t n, std::size_t d, const double* w, const double* y,
                  double beta);

/// Gaussian KDE density at each point of xs from sorted samples.
void kde_eval_serial(const std::vector<double>& sorted, double h, const std::vector<double>& xs,
                     std::vector<double>& out);
void kde_eval_parallel(const std::vector<double>& sorted, double h, const std::vector<double>& xs,
                       std::vector<double>& out);

}  // namespace asymscore::kernels

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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "asymscore/kernels.hpp"
#include "asymscore/random.hpp"

namespace {

using namespace asymscore;

std::vector<double> draws(std::size_t n, std::uint64_t stream) {
  Rng rng = substream(kDefaultSeed, stream);
  std::vector<double> x(n);
  for (double& v : x) v = standard_normal(rng);
  return x;
}

TEST(PairSum, ParallelMatchesSerial) {
  for (std::size_t d : {1u, 3u}) {
    const auto x = draws(700 * d, 80 + d);
    std::vector<double> w(700);
    Rng rng = substream(kDefaultSeed, 90);
    double tot = 0.0;
    for (double& v : w) tot += (v = uniform01(rng));
    for (double& v : w) v /= tot;
    for (double beta : {0.5, 1.0, 1.7}) {
      for (const double* wp : {static_cast<const double*>(nullptr), static_cast<const double*>(w.data())}) {
        const double s = kernels::pair_sum_serial(x.data(), 700, d, wp, beta);
        const double p = kernels::pair_sum_parallel(x.data(), 700, d, wp, beta);
        EXPECT_NEAR(p, s, 1e-12 * s) << "d=" << d << " beta=" << beta;
        EXPECT_NEAR(kernels::pair_sum(x.data(), 700, d, wp, beta), s, 1e-12 * s);
      }
    }
  }
}

TEST(PairSum, SortedMatchesSerial) {
  const auto x = draws(1000, 81);
  const double s = kernels::pair_sum_serial(x.data(), x.size(), 1, nullptr, 1.0);
  EXPECT_NEAR(kernels::pair_sum_sorted(x.data(), x.size(), nullptr), s, 1e-12 * s);
  std::vector<double> w(x.size(), 1.0 / x.size());
  EXPECT_NEAR(kernels::pair_sum_sorted(x.data(), x.size(), w.data()), s, 1e-12 * s);
}

TEST(PairSum, SmallExample) {
  const std::vector<double> x = {0.0, 1.0, 3.0};
  // Ordered pairs: 2 * (1 + 3 + 2) / 9.
  EXPECT_NEAR(kernels::pair_sum_serial(x.data(), 3, 1, nullptr, 1.0), 12.0 / 9.0, 1e-15);
  const std::vector<double> y = {0.5};
  EXPECT_NEAR(kernels::target_sum(x.data(), 3, 1, nullptr, y.data(), 1.0), 3.5 / 3.0, 1e-15);
}

TEST(Kde, ParallelMatchesSerial) {
  auto x = draws(5000, 82);
  std::sort(x.begin(), x.end());
  std::vector<double> xs;
  for (int i = 0; i <= 400; ++i) xs.push_back(-5.0 + 0.025 * i);
  std::vector<double> a, b;
  kernels::kde_eval_serial(x, 0.3, xs, a);
  kernels::kde_eval_parallel(x, 0.3, xs, b);
  ASSERT_EQ(a.size(), xs.size());
  ASSERT_EQ(b.size(), xs.size());
  double mass = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    EXPECT_NEAR(a[i], b[i], 1e-14);
    mass += 0.025 * a[i];
  }
  EXPECT_NEAR(mass, 1.0, 1e-3);
}

}  // namespace

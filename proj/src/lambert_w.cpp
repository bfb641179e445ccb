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

#include "asymscore/lambert_w.hpp"

#include <cmath>

#include "asymscore/error.hpp"

namespace asymscore::numerics {

namespace {

constexpr double kInvE = 0.36787944117144233;

double seed(LambertBranch branch, double x) {
  const double p = std::sqrt(2.0 * (std::exp(1.0) * x + 1.0));
  if (branch == LambertBranch::kPrincipal) {
    if (x < -0.25) return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    if (x < 3.0) return std::log1p(x) * (1.0 - std::log1p(std::log1p(x)) / (2.0 + std::log1p(x)));
    const double l = std::log(x);
    return l - std::log(l);
  }
  if (x < -0.25) return -1.0 - p - p * p / 3.0 - 11.0 / 72.0 * p * p * p;
  const double l = std::log(-x);
  return l - std::log(-l);
}

}  // namespace

double lambert_w(LambertBranch branch, double x) {
  if (!std::isfinite(x) || x < -kInvE - 1e-16) {
    throw Error(ErrorCode::kParameterOutOfDomain, "lambert_w needs x >= -1/e");
  }
  if (branch == LambertBranch::kMinusOne && x >= 0.0) {
    throw Error(ErrorCode::kParameterOutOfDomain, "lower branch of lambert_w needs x < 0");
  }
  if (x <= -kInvE) return -1.0;
  if (x == 0.0) return 0.0;
  double w = seed(branch, x);
  for (int it = 0; it < 100; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::fabs(step) <= 4e-16 * std::max(1.0, std::fabs(w))) break;
  }
  return w;
}

}  // namespace asymscore::numerics

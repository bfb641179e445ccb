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

// Random streams. Every stochastic routine takes an explicit Rng so that
// results depend only on the caller's seed.

#pragma once

#include <cstdint>
#include <random>

namespace asymscore {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20260101ULL;

/// SplitMix64 finalizer, used to decorrelate derived seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Uniform draw on the open interval (0, 1) with 53 random bits.
double uniform01(Rng& rng);

/// Standard normal draw by inversion (portable across standard libraries).
double standard_normal(Rng& rng);

/// Independent stream for task `index` under a master seed.
Rng substream(std::uint64_t master_seed, std::uint64_t index);

}  // namespace asymscore

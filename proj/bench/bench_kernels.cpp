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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <vector>

#include "asymscore/kernels.hpp"
#include "asymscore/random.hpp"

namespace {

using namespace asymscore;

std::vector<double> normals(std::size_t n, std::uint64_t stream) {
  Rng rng = substream(kDefaultSeed, stream);
  std::vector<double> x(n);
  for (auto& v : x) v = standard_normal(rng);
  return x;
}

void BM_PairSumSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = normals(n, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::pair_sum_serial(x.data(), n, 1, nullptr, 1.5));
  }
  state.SetComplexityN(state.range(0));
}

void BM_PairSumParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = normals(n, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::pair_sum_parallel(x.data(), n, 1, nullptr, 1.5));
  }
  state.SetComplexityN(state.range(0));
}

void BM_PairSumSorted(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = normals(n, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::pair_sum_sorted(x.data(), n, nullptr));
  }
  state.SetComplexityN(state.range(0));
}

void BM_KdeSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto s = normals(n, 2);
  std::sort(s.begin(), s.end());
  const auto xs = normals(1024, 3);
  std::vector<double> out;
  for (auto _ : state) {
    kernels::kde_eval_serial(s, 0.3, xs, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_KdeParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto s = normals(n, 2);
  std::sort(s.begin(), s.end());
  const auto xs = normals(1024, 3);
  std::vector<double> out;
  for (auto _ : state) {
    kernels::kde_eval_parallel(s, 0.3, xs, out);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_PairSumSerial)->RangeMultiplier(4)->Range(256, 4096)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_PairSumParallel)->RangeMultiplier(4)->Range(256, 4096)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_PairSumSorted)->RangeMultiplier(4)->Range(256, 4096)->Complexity(benchmark::oNLogN);
BENCHMARK(BM_KdeSerial)->RangeMultiplier(8)->Range(512, 32768);
BENCHMARK(BM_KdeParallel)->RangeMultiplier(8)->Range(512, 32768);

BENCHMARK_MAIN();

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

// Runs every acceptance criterion and prints one line per criterion.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "asymscore/checks.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = asymscore::kDefaultSeed;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  for (const auto& check : asymscore::checks::acceptance_checks()) {
    const auto r = check.run(seed);
    failed += !r.passed;
    std::printf("%s\n", asymscore::checks::format_result(r).c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(asymscore::checks::acceptance_checks().size()) - failed,
              asymscore::checks::acceptance_checks().size());
  return failed == 0 ? 0 : 1;
}

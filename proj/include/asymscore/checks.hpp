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

// Executable acceptance criteria and module invariants, shared by the
// acceptance test binary and the `selftest` subcommand.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "asymscore/random.hpp"

namespace asymscore::checks {

struct CheckResult {
  std::string id;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Check {
  std::string id;
  std::string name;
  std::function<CheckResult(std::uint64_t seed)> run;
};

/// The fourteen acceptance criteria, ids "C1" .. "C14".
const std::vector<Check>& acceptance_checks();

/// Invariants of every library module, ids "inv.<module>.<property>".
const std::vector<Check>& invariant_checks();

/// Runs a list of checks in order. An exception inside a check fails it.
std::vector<CheckResult> run_checks(const std::vector<Check>& checks,
                                    std::uint64_t seed = kDefaultSeed);

/// "PASS C1 name (detail) [1.23 s]"
std::string format_result(const CheckResult& r);

}  // namespace asymscore::checks

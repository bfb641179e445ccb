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

// Real branches of the Lambert W function.

#pragma once

namespace asymscore::numerics {

enum class LambertBranch { kPrincipal, kMinusOne };

/// Solves w exp(w) = x by Halley iteration. The principal branch needs
/// x >= -1/e; the minus-one branch needs -1/e <= x < 0.
double lambert_w(LambertBranch branch, double x);

}  // namespace asymscore::numerics

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

// Thread-count control shared by the OpenMP loops.

#pragma once

namespace asymscore {

/// Caps the worker count used by parallel loops; n <= 0 restores the
/// default (all available cores).
void set_max_threads(int n);

/// Current cap on worker threads.
int max_threads();

}  // namespace asymscore

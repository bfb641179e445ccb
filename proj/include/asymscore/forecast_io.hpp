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

// Reading quantile forecasts and observed targets from CSV.

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "asymscore/csv.hpp"
#include "asymscore/forecasts.hpp"

namespace asymscore::forecast_io {

/// (location, date, horizon)
using TaskKey = std::tuple<std::string, std::string, int>;

struct Rejection {
  forecasts::ForecastMeta meta;
  std::string reason;
  std::string detail;
};

struct ForecastLoad {
  std::vector<forecasts::QuantileForecast> accepted;
  std::vector<Rejection> rejected;
};

/// True for a valid calendar date written YYYY-MM-DD.
bool is_iso_date(const std::string& text);

/// Groups rows by (forecaster, location, date, horizon), sorts each group
/// by level and validates it. Groups with malformed rows or failing
/// validation are rejected as a whole. Output order follows the sorted
/// group key.
ForecastLoad load_forecasts(const csv::Table& table);
ForecastLoad load_forecasts_file(const std::string& path);

/// Throws DataError on a malformed row or a duplicated key.
std::map<TaskKey, double> load_targets(const csv::Table& table);
std::map<TaskKey, double> load_targets_file(const std::string& path);

/// Sidecar with columns forecaster,location,date,horizon,reason,detail.
void write_rejections(std::ostream& out, const std::vector<Rejection>& rejected);

TaskKey task_of(const forecasts::ForecastMeta& meta);

}  // namespace asymscore::forecast_io

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

#include "asymscore/forecast_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>
#include <utility>

#include "asymscore/error.hpp"

namespace asymscore::forecast_io {

namespace {

using GroupKey = std::tuple<std::string, std::string, std::string, int>;

struct Group {
  forecasts::ForecastMeta meta;
  std::vector<std::pair<double, double>> points;  // (level, value) in file order
  std::string error;
};

bool all_digits(const std::string& s, std::size_t from, std::size_t n) {
  for (std::size_t i = from; i < from + n; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

bool is_iso_date(const std::string& text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
  if (!all_digits(text, 0, 4) || !all_digits(text, 5, 2) || !all_digits(text, 8, 2)) return false;
  const int y = std::stoi(text.substr(0, 4));
  const int m = std::stoi(text.substr(5, 2));
  const int d = std::stoi(text.substr(8, 2));
  if (m < 1 || m > 12 || d < 1) return false;
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  const int limit = kDays[m - 1] + (m == 2 && leap ? 1 : 0);
  return d <= limit;
}

TaskKey task_of(const forecasts::ForecastMeta& meta) {
  return {meta.location, meta.date, meta.horizon};
}

ForecastLoad load_forecasts(const csv::Table& table) {
  table.require_columns({"forecaster", "location", "date", "horizon", "level", "value"});
  const auto c_f = table.column("forecaster");
  const auto c_l = table.column("location");
  const auto c_d = table.column("date");
  const auto c_h = table.column("horizon");
  const auto c_lv = table.column("level");
  const auto c_v = table.column("value");

  std::map<GroupKey, Group> groups;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string where = "line " + std::to_string(table.lines[r]);
    int horizon = 0;
    std::string err;
    try {
      horizon = static_cast<int>(csv::parse_integer(row[c_h], "horizon"));
    } catch (const Error& e) {
      err = where + ": " + e.what();
    }
    Group& g = groups[{row[c_f], row[c_l], row[c_d], horizon}];
    g.meta = {row[c_f], row[c_l], row[c_d], horizon};
    if (!g.error.empty()) continue;
    if (!err.empty()) {
      g.error = err;
      continue;
    }
    if (!is_iso_date(row[c_d])) {
      g.error = where + ": date '" + row[c_d] + "' is not ISO-8601";
      continue;
    }
    try {
      g.points.emplace_back(csv::parse_number(row[c_lv], "level"),
                            csv::parse_number(row[c_v], "value"));
    } catch (const Error& e) {
      g.error = where + ": " + e.what();
    }
  }

  ForecastLoad out;
  for (auto& [key, g] : groups) {
    if (!g.error.empty()) {
      out.rejected.push_back({g.meta, std::string(to_string(ErrorCode::kDataError)), g.error});
      continue;
    }
    forecasts::QuantileForecast q;
    q.meta = g.meta;
    // Crossings are detected on values read in level order.
    std::stable_sort(g.points.begin(), g.points.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [lv, v] : g.points) {
      q.levels.push_back(lv);
      q.values.push_back(v);
    }
    const auto res = forecasts::validate_quantiles(q);
    if (!res.accepted) {
      out.rejected.push_back({g.meta, std::string(to_string(res.code)), res.detail});
      continue;
    }
    out.accepted.push_back(std::move(q));
  }
  return out;
}

ForecastLoad load_forecasts_file(const std::string& path) {
  return load_forecasts(csv::read_file(path));
}

std::map<TaskKey, double> load_targets(const csv::Table& table) {
  table.require_columns({"location", "date", "horizon", "observed"});
  const auto c_l = table.column("location");
  const auto c_d = table.column("date");
  const auto c_h = table.column("horizon");
  const auto c_o = table.column("observed");
  std::map<TaskKey, double> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string where = "line " + std::to_string(table.lines[r]) + ": ";
    if (!is_iso_date(row[c_d])) {
      throw Error(ErrorCode::kDataError, where + "date '" + row[c_d] + "' is not ISO-8601");
    }
    const int h = static_cast<int>(csv::parse_integer(row[c_h], "horizon"));
    const double y = csv::parse_number(row[c_o], "observed");
    if (!std::isfinite(y)) throw Error(ErrorCode::kDataError, where + "observed value is not finite");
    if (!out.emplace(TaskKey{row[c_l], row[c_d], h}, y).second) {
      throw Error(ErrorCode::kDataError, where + "duplicate target");
    }
  }
  return out;
}

std::map<TaskKey, double> load_targets_file(const std::string& path) {
  return load_targets(csv::read_file(path));
}

void write_rejections(std::ostream& out, const std::vector<Rejection>& rejected) {
  csv::Writer w(out);
  w.row({"forecaster", "location", "date", "horizon", "reason", "detail"});
  for (const auto& r : rejected) {
    w.row({r.meta.forecaster, r.meta.location, r.meta.date, std::to_string(r.meta.horizon),
           r.reason, r.detail});
  }
}

}  // namespace asymscore::forecast_io

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

// Experiment pipelines: expected-loss heatmaps over (mu, sigma), within-task
// forecaster rankings, dispersion flips of kernel density estimates, target
// standardization and asymmetric Laplace grids.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "asymscore/forecast_io.hpp"
#include "asymscore/forecasts.hpp"
#include "asymscore/scoring.hpp"

namespace asymscore::harness {

using families::DistPtr;
using scoring::LossSpec;

struct HeatmapGrid {
  std::vector<double> mu_axis;
  std::vector<double> sigma_axis;
  /// cells[i * sigma_axis.size() + j] belongs to (mu_axis[i], sigma_axis[j]).
  std::vector<double> cells;
  std::size_t argmin = 0;
  bool has_finite_cell = false;

  double cell(std::size_t i, std::size_t j) const { return cells[i * sigma_axis.size() + j]; }
  double argmin_mu() const { return mu_axis[argmin / sigma_axis.size()]; }
  double argmin_sigma() const { return sigma_axis[argmin % sigma_axis.size()]; }
};

/// -2, -1.9, ..., 2.
std::vector<double> default_mu_axis();
/// 2^(k / 10) for k = -20..20.
std::vector<double> default_sigma_axis();

struct HeatmapPair {
  DistPtr forecast;
  double outcome;
};

/// Mean score of affine_to(F, mu, sigma) over the pairs for every cell.
/// Consecutive pairs sharing a forecast reuse one transformed scorer.
HeatmapGrid heatmap(const LossSpec& spec, const std::vector<HeatmapPair>& pairs,
                    const std::vector<double>& mu_axis, const std::vector<double>& sigma_axis);

/// Fills argmin / has_finite_cell from the cells, ignoring infinite ones.
void locate_argmin(HeatmapGrid& grid);

struct ScoredRecord {
  std::string forecaster;
  std::string location;
  std::string date;
  int horizon = 0;
  std::string loss_tag;
  double loss_value = 0.0;
  double forecast_variance = 0.0;
};

struct RankingRow {
  std::string forecaster;
  std::string loss_tag;
  double mean_std_rank = 0.0;
  double mean_std_variance_rank = 0.0;
  std::size_t groups = 0;
};

struct RankingTable {
  std::vector<RankingRow> rows;  // sorted by (loss_tag, forecaster)
  std::size_t degenerate_groups = 0;
};

/// Average ranks (ties share the mean of their positions), 1-based.
std::vector<double> fractional_ranks(const std::vector<double>& values);

/// Within each (loss_tag, location, date, horizon) group: fractional rank
/// divided by the group size, for the loss and for the forecast variance;
/// then averaged per forecaster over the groups it entered. Singleton
/// groups are skipped and counted.
RankingTable standardized_ranking(const std::vector<ScoredRecord>& records);

/// Scores accepted quantile forecasts against the matching targets with
/// every loss; forecasts without a target are skipped.
std::vector<ScoredRecord> score_quantile_forecasts(
    const std::vector<LossSpec>& specs, const std::vector<forecasts::QuantileForecast>& forecasts,
    const std::map<forecast_io::TaskKey, double>& targets);

enum class FlipDivergence { kKl, kCramer };
std::string to_string(FlipDivergence d);
FlipDivergence parse_flip_divergence(const std::string& text);

struct DispersionRecord {
  double a = 1.0;
  double d_original = 0.0;
  double d_flipped = 0.0;
};

/// KDE both samples, move F to G's mean, estimate a = sd(F) / sd(G) and
/// compare d(F, G) with the divergence after rescaling F about the mean by
/// 1 / a^2, which gives the forecast sd(G) / a.
DispersionRecord dispersion_flip(const std::vector<double>& f_samples,
                                 const std::vector<double>& g_samples, FlipDivergence div);

struct StandardizedSeries {
  std::vector<double> values;
  std::vector<double> means;
  std::vector<double> sds;

  double inverse(std::size_t t, double z) const { return means[t] + sds[t] * z; }
};

class Standardizer {
 public:
  virtual ~Standardizer() = default;
  virtual StandardizedSeries apply(const std::vector<double>& series) const = 0;
};

/// Centered rolling mean and sd over window points (an even window is
/// widened by one), edges reflected, sd floored at 1e-6 times the global sd
/// (or 1e-6 for a constant series).
class RollingStandardizer final : public Standardizer {
 public:
  explicit RollingStandardizer(std::size_t window);
  StandardizedSeries apply(const std::vector<double>& series) const override;
  std::size_t window() const { return window_; }

 private:
  std::size_t window_;
};

/// Expected-loss grids with the target an asymmetric Laplace law with skew
/// p standardized to mean 0 and sd 1, and forecasts the same law moved to
/// each (mu, sigma).
std::vector<HeatmapGrid> asymmetric_laplace_grid(double p, const std::vector<LossSpec>& specs,
                                                 const std::vector<double>& mu_axis,
                                                 const std::vector<double>& sigma_axis);

struct ConfoundingResult {
  /// [d(F,G) + d(H_s,G_s)] - [d(H,G) + d(F_s,G_s)]
  double specializations = 0.0;
  /// [d(F,G) + d(F_s,G_s)] / 2 - d(F,G)
  double missing = 0.0;
};

/// Total-loss differences when two tasks differ in scale by sigma.
ConfoundingResult aggregation_confounding(const LossSpec& spec, const DistPtr& F, const DistPtr& H,
                                          const DistPtr& G, double sigma);

void write_heatmap_csv(std::ostream& out, const HeatmapGrid& grid);
void write_ranking_csv(std::ostream& out, const RankingTable& table);
void write_dispersion_csv(std::ostream& out, const std::vector<std::string>& units,
                          const std::vector<DispersionRecord>& records, FlipDivergence div);

}  // namespace asymscore::harness

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

#include "asymscore/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <tuple>

#include "asymscore/csv.hpp"
#include "asymscore/divergence.hpp"
#include "asymscore/error.hpp"

namespace asymscore::harness {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::vector<double> default_mu_axis() {
  std::vector<double> out;
  for (int k = -20; k <= 20; ++k) out.push_back(k / 10.0);
  return out;
}

std::vector<double> default_sigma_axis() {
  std::vector<double> out;
  for (int k = -20; k <= 20; ++k) out.push_back(std::exp2(k / 10.0));
  return out;
}

void locate_argmin(HeatmapGrid& grid) {
  grid.has_finite_cell = false;
  double best = kInf;
  for (std::size_t c = 0; c < grid.cells.size(); ++c) {
    if (std::isfinite(grid.cells[c]) && grid.cells[c] < best) {
      best = grid.cells[c];
      grid.argmin = c;
      grid.has_finite_cell = true;
    }
  }
}

HeatmapGrid heatmap(const LossSpec& spec, const std::vector<HeatmapPair>& pairs,
                    const std::vector<double>& mu_axis, const std::vector<double>& sigma_axis) {
  if (pairs.empty()) throw Error(ErrorCode::kEmptyPairs, "heatmap needs at least one pair");
  if (mu_axis.empty() || sigma_axis.empty()) {
    throw Error(ErrorCode::kDataError, "heatmap axes must be nonempty");
  }
  for (std::size_t j = 0; j < sigma_axis.size(); ++j) {
    if (!(sigma_axis[j] > 0.0) || (j && sigma_axis[j] <= sigma_axis[j - 1])) {
      throw Error(ErrorCode::kDataError, "sigma axis must be positive and ascending");
    }
  }
  for (std::size_t i = 1; i < mu_axis.size(); ++i) {
    if (mu_axis[i] <= mu_axis[i - 1]) throw Error(ErrorCode::kDataError, "mu axis must ascend");
  }
  spec.validate();

  // Runs of pairs with the same forecast object share a scorer.
  std::vector<std::size_t> run_start{0};
  for (std::size_t k = 1; k < pairs.size(); ++k) {
    if (pairs[k].forecast != pairs[k - 1].forecast) run_start.push_back(k);
  }
  run_start.push_back(pairs.size());

  HeatmapGrid grid;
  grid.mu_axis = mu_axis;
  grid.sigma_axis = sigma_axis;
  const std::size_t n_cells = mu_axis.size() * sigma_axis.size();
  grid.cells.assign(n_cells, 0.0);
  std::vector<std::string> errors(n_cells);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(n_cells); ++c) {
    const double mu = mu_axis[c / sigma_axis.size()];
    const double sigma = sigma_axis[c % sigma_axis.size()];
    try {
      double total = 0.0;
      for (std::size_t r = 0; r + 1 < run_start.size(); ++r) {
        const scoring::Scorer scorer(spec,
                                     forecasts::affine_to(pairs[run_start[r]].forecast, mu, sigma));
        for (std::size_t k = run_start[r]; k < run_start[r + 1]; ++k) {
          total += scorer(pairs[k].outcome);
        }
      }
      grid.cells[c] = total / static_cast<double>(pairs.size());
    } catch (const std::exception& e) {
      errors[c] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw Error(ErrorCode::kDataError, "heatmap cell failed: " + e);
  }
  locate_argmin(grid);
  return grid;
}

std::vector<double> fractional_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

RankingTable standardized_ranking(const std::vector<ScoredRecord>& records) {
  using Key = std::tuple<std::string, std::string, std::string, int>;
  std::map<Key, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (std::isnan(r.loss_value) || std::isnan(r.forecast_variance)) {
      throw Error(ErrorCode::kDataError, "NaN loss or variance for forecaster " + r.forecaster);
    }
    groups[{r.loss_tag, r.location, r.date, r.horizon}].push_back(i);
  }

  struct Acc {
    double rank = 0.0;
    double var_rank = 0.0;
    std::size_t n = 0;
  };
  std::map<std::pair<std::string, std::string>, Acc> acc;
  RankingTable table;
  for (const auto& [key, idx] : groups) {
    if (idx.size() < 2) {
      ++table.degenerate_groups;
      continue;
    }
    std::vector<double> losses;
    std::vector<double> vars;
    for (std::size_t i : idx) {
      losses.push_back(records[i].loss_value);
      vars.push_back(records[i].forecast_variance);
    }
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        if (records[idx[a]].forecaster == records[idx[b]].forecaster) {
          throw Error(ErrorCode::kDataError,
                      "forecaster " + records[idx[a]].forecaster + " appears twice in one task");
        }
      }
    }
    const auto lr = fractional_ranks(losses);
    const auto vr = fractional_ranks(vars);
    const double n = static_cast<double>(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) {
      Acc& s = acc[{std::get<0>(key), records[idx[a]].forecaster}];
      s.rank += lr[a] / n;
      s.var_rank += vr[a] / n;
      ++s.n;
    }
  }
  for (const auto& [key, s] : acc) {
    const double n = static_cast<double>(s.n);
    table.rows.push_back({key.second, key.first, s.rank / n, s.var_rank / n, s.n});
  }
  return table;
}

std::vector<ScoredRecord> score_quantile_forecasts(
    const std::vector<LossSpec>& specs, const std::vector<forecasts::QuantileForecast>& fcs,
    const std::map<forecast_io::TaskKey, double>& targets) {
  std::vector<std::vector<ScoredRecord>> per(fcs.size());
  std::vector<std::string> errors(fcs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(fcs.size()); ++i) {
    const auto& q = fcs[i];
    const auto it = targets.find(forecast_io::task_of(q.meta));
    if (it == targets.end()) continue;
    try {
      const auto dist = forecasts::quantile_to_distribution(q);
      const double var = dist->variance();
      for (const auto& spec : specs) {
        per[i].push_back({q.meta.forecaster, q.meta.location, q.meta.date, q.meta.horizon,
                          spec.describe(), scoring::score(spec, dist, it->second), var});
      }
    } catch (const std::exception& e) {
      errors[i] = q.meta.forecaster + " " + q.meta.location + " " + q.meta.date + ": " + e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw Error(ErrorCode::kDataError, e);
  }
  std::vector<ScoredRecord> out;
  for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::string to_string(FlipDivergence d) { return d == FlipDivergence::kKl ? "kl" : "cramer"; }

FlipDivergence parse_flip_divergence(const std::string& text) {
  if (text == "kl") return FlipDivergence::kKl;
  if (text == "cramer") return FlipDivergence::kCramer;
  throw Error(ErrorCode::kUnknownKind, "divergence must be kl or cramer, got '" + text + "'");
}

DispersionRecord dispersion_flip(const std::vector<double>& f_samples,
                                 const std::vector<double>& g_samples, FlipDivergence div) {
  const auto F = forecasts::kde_fit(f_samples);
  const auto G = forecasts::kde_fit(g_samples);
  const LossSpec spec = LossSpec::of(div == FlipDivergence::kKl ? scoring::LossTag::kLog
                                                                 : scoring::LossTag::kCrps);
  DispersionRecord rec;
  rec.a = forecasts::population_sd(f_samples) / forecasts::population_sd(g_samples);
  const double m = G->mean();
  const DistPtr centred = F->affine(m - F->mean(), 1.0);
  const double s = 1.0 / (rec.a * rec.a);
  const DistPtr flipped = centred->affine(m - s * m, s);
  rec.d_original = divergence::div(spec, centred, G).value;
  rec.d_flipped = divergence::div(spec, flipped, G).value;
  return rec;
}

RollingStandardizer::RollingStandardizer(std::size_t window) : window_(window) {
  if (window < 4) throw Error(ErrorCode::kSeriesTooShort, "window must be at least 4");
}

StandardizedSeries RollingStandardizer::apply(const std::vector<double>& series) const {
  const std::size_t n = series.size();
  if (n < window_) {
    throw Error(ErrorCode::kSeriesTooShort, "series of length " + std::to_string(n) +
                                                " is shorter than the window " +
                                                std::to_string(window_));
  }
  for (double v : series) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kDataError, "series values must be finite");
  }
  const double global_sd = forecasts::population_sd(series);
  const double floor = global_sd > 0.0 ? 1e-6 * global_sd : 1e-6;
  const auto half = static_cast<std::ptrdiff_t>(window_ / 2);
  const auto last = static_cast<std::ptrdiff_t>(n) - 1;
  auto reflect = [&](std::ptrdiff_t i) {
    if (i < 0) i = -i;
    if (i > last) i = 2 * last - i;
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, last));
  };
  StandardizedSeries out;
  out.values.resize(n);
  out.means.resize(n);
  out.sds.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    double sum = 0.0;
    const auto tt = static_cast<std::ptrdiff_t>(t);
    for (std::ptrdiff_t k = -half; k <= half; ++k) sum += series[reflect(tt + k)];
    const double count = static_cast<double>(2 * half + 1);
    const double mean = sum / count;
    double ss = 0.0;
    for (std::ptrdiff_t k = -half; k <= half; ++k) {
      const double d = series[reflect(tt + k)] - mean;
      ss += d * d;
    }
    const double sd = std::max(std::sqrt(ss / count), floor);
    out.means[t] = mean;
    out.sds[t] = sd;
    out.values[t] = (series[t] - mean) / sd;
  }
  return out;
}

std::vector<HeatmapGrid> asymmetric_laplace_grid(double p, const std::vector<LossSpec>& specs,
                                                 const std::vector<double>& mu_axis,
                                                 const std::vector<double>& sigma_axis) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::kParameterOutOfDomain, "p must lie in (0, 1)");
  const DistPtr raw = std::make_shared<families::AsymmetricLaplace>(0.0, 1.0, p);
  const DistPtr target = forecasts::affine_to(raw, 0.0, 1.0);
  const std::size_t nc = mu_axis.size() * sigma_axis.size();
  std::vector<HeatmapGrid> out;
  for (const auto& spec : specs) {
    HeatmapGrid grid;
    grid.mu_axis = mu_axis;
    grid.sigma_axis = sigma_axis;
    grid.cells.assign(nc, 0.0);
    std::vector<std::string> errors(nc);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nc); ++c) {
      try {
        const auto F = forecasts::affine_to(target, mu_axis[c / sigma_axis.size()],
                                            sigma_axis[c % sigma_axis.size()]);
        grid.cells[c] = divergence::expected_loss(spec, F, target);
      } catch (const std::exception& e) {
        errors[c] = e.what();
      }
    }
    for (const auto& e : errors) {
      if (!e.empty()) throw Error(ErrorCode::kDataError, "grid cell failed: " + e);
    }
    locate_argmin(grid);
    out.push_back(std::move(grid));
  }
  return out;
}

ConfoundingResult aggregation_confounding(const LossSpec& spec, const DistPtr& F, const DistPtr& H,
                                          const DistPtr& G, double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::kParameterOutOfDomain, "sigma must be positive");
  const DistPtr Fs = F->affine(0.0, sigma);
  const DistPtr Hs = H->affine(0.0, sigma);
  const DistPtr Gs = G->affine(0.0, sigma);
  // Entropy terms cancel in the first difference but not in the second,
  // so both are taken on divergences.
  const double lFG = divergence::div(spec, F, G).value;
  const double lHG = divergence::div(spec, H, G).value;
  const double lFGs = divergence::div(spec, Fs, Gs).value;
  const double lHGs = divergence::div(spec, Hs, Gs).value;
  ConfoundingResult r;
  r.specializations = (lFG + lHGs) - (lHG + lFGs);
  r.missing = 0.5 * (lFG + lFGs) - lFG;
  return r;
}

void write_heatmap_csv(std::ostream& out, const HeatmapGrid& grid) {
  csv::Writer w(out);
  w.row({"mu", "sigma", "loss"});
  for (std::size_t i = 0; i < grid.mu_axis.size(); ++i) {
    for (std::size_t j = 0; j < grid.sigma_axis.size(); ++j) {
      w.row({csv::format_number(grid.mu_axis[i]), csv::format_number(grid.sigma_axis[j]),
             csv::format_number(grid.cell(i, j))});
    }
  }
}

void write_ranking_csv(std::ostream& out, const RankingTable& table) {
  csv::Writer w(out);
  w.row({"forecaster", "loss_tag", "mean_std_rank", "mean_std_variance_rank"});
  for (const auto& r : table.rows) {
    w.row({r.forecaster, r.loss_tag, csv::format_number(r.mean_std_rank),
           csv::format_number(r.mean_std_variance_rank)});
  }
}

void write_dispersion_csv(std::ostream& out, const std::vector<std::string>& units,
                          const std::vector<DispersionRecord>& records, FlipDivergence div) {
  if (units.size() != records.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one unit label per dispersion record");
  }
  csv::Writer w(out);
  w.row({"unit", "a", "d_original", "d_flipped", "divergence"});
  for (std::size_t i = 0; i < records.size(); ++i) {
    w.row({units[i], csv::format_number(records[i].a), csv::format_number(records[i].d_original),
           csv::format_number(records[i].d_flipped), to_string(div)});
  }
}

}  // namespace asymscore::harness

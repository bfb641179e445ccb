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

#include "asymscore/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "asymscore/asymmetry.hpp"
#include "asymscore/checks.hpp"
#include "asymscore/csv.hpp"
#include "asymscore/divergence.hpp"
#include "asymscore/error.hpp"
#include "asymscore/expfam.hpp"
#include "asymscore/families.hpp"
#include "asymscore/forecast_io.hpp"
#include "asymscore/forecasts.hpp"
#include "asymscore/harness.hpp"
#include "asymscore/hedging.hpp"
#include "asymscore/parallel.hpp"
#include "asymscore/random.hpp"
#include "asymscore/scoring.hpp"

namespace asymscore::cli {

namespace {

namespace fs = std::filesystem;
using families::DistPtr;
using scoring::LossSpec;

struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  int threads = 0;
  bool json = false;
  std::string out_dir;

  std::vector<std::string> losses;
  std::vector<std::string> dists;
  std::vector<double> ys;
  std::string forecasts_path;
  std::string targets_path;
  std::string rejected_path;

  std::vector<std::string> forecast_dists;
  std::string target_dist;
  std::string method = "auto";
  std::size_t draws = 100000;

  std::vector<std::string> scale_families;
  std::vector<std::string> expfams;
  std::vector<double> sigmas;
  std::vector<double> mus;
  std::vector<double> etas;
  std::vector<double> thetas;
  std::vector<std::string> shifts;

  std::string mu_range;
  std::string log2_sigma_range;
  std::optional<double> al_p;

  std::string samples_path;
  std::string flip_divergence = "kl";

  bool acceptance = false;
  std::string filter;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// A table with per-column numeric flags, written as CSV or mirrored as JSON.
struct OutTable {
  std::string name;
  std::vector<std::string> header;
  std::vector<bool> numeric;
  std::vector<std::vector<std::string>> rows;

  OutTable(std::string n, std::vector<std::pair<std::string, bool>> cols) : name(std::move(n)) {
    for (auto& [h, num] : cols) {
      header.push_back(h);
      numeric.push_back(num);
    }
  }
  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

void write_csv(std::ostream& out, const OutTable& t) {
  csv::Writer w(out);
  w.row(t.header);
  for (const auto& r : t.rows) w.row(r);
}

nlohmann::ordered_json to_json(const OutTable& t) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < t.header.size(); ++c) {
      const std::string& cell = r[c];
      if (t.numeric[c] && cell != "nan" && cell != "inf" && cell != "-inf") {
        obj[t.header[c]] = std::strtod(cell.c_str(), nullptr);
      } else {
        obj[t.header[c]] = cell;
      }
    }
    arr.push_back(std::move(obj));
  }
  return arr;
}

std::string file_stem(std::string s) {
  for (char& c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '_')) c = '_';
  }
  return s;
}

void emit(const RunConfig& cfg, const OutTable& t, std::ostream& out) {
  if (cfg.out_dir.empty()) {
    if (cfg.json) {
      out << to_json(t).dump(2) << "\n";
    } else {
      write_csv(out, t);
    }
    return;
  }
  const fs::path base = fs::path(cfg.out_dir) / file_stem(t.name);
  {
    std::ofstream f(base.string() + ".csv", std::ios::binary);
    if (!f) throw Error(ErrorCode::kDataError, "cannot write " + base.string() + ".csv");
    write_csv(f, t);
  }
  if (cfg.json) {
    std::ofstream f(base.string() + ".json", std::ios::binary);
    if (!f) throw Error(ErrorCode::kDataError, "cannot write " + base.string() + ".json");
    f << to_json(t).dump(2) << "\n";
  }
}

std::vector<LossSpec> parse_losses(const std::vector<std::string>& texts) {
  std::vector<LossSpec> out;
  for (const auto& t : texts) out.push_back(scoring::parse_loss(t));
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

void require_readable(const std::string& path) {
  if (!fs::is_regular_file(path)) throw Error(ErrorCode::kDataError, "cannot read " + path);
}

std::vector<double> parse_axis(const std::string& text, bool log2_scale) {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;
  char c1 = 0;
  char c2 = 0;
  std::istringstream in(text);
  if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0) || hi < lo) {
    throw UsageError("axis '" + text + "' must be lo:hi:step with step > 0");
  }
  const long n = std::lround((hi - lo) / step);
  std::vector<double> axis;
  for (long k = 0; k <= n; ++k) {
    const double v = lo + static_cast<double>(k) * step;
    axis.push_back(log2_scale ? std::exp2(v) : v);
  }
  return axis;
}

// Loads forecasts and writes the rejected-record sidecar. Returns the
// number of rejected groups.
std::size_t load_quantiles(const RunConfig& cfg, forecast_io::ForecastLoad& load,
                           std::ostream& err) {
  require_readable(cfg.forecasts_path);
  load = forecast_io::load_forecasts_file(cfg.forecasts_path);
  if (load.rejected.empty()) return 0;
  std::string path = cfg.rejected_path;
  if (path.empty()) {
    path = cfg.out_dir.empty() ? cfg.forecasts_path + ".rejected.csv"
                               : (fs::path(cfg.out_dir) / "rejected.csv").string();
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kDataError, "cannot write " + path);
  forecast_io::write_rejections(f, load.rejected);
  err << "rejected " << load.rejected.size() << " forecast group(s); see " << path << "\n";
  return load.rejected.size();
}

int cmd_score(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require(!cfg.losses.empty(), "score needs --loss");
  const auto specs = parse_losses(cfg.losses);
  if (!cfg.forecasts_path.empty()) {
    require(!cfg.targets_path.empty(), "score --forecasts needs --targets");
    forecast_io::ForecastLoad load;
    const std::size_t rejected = load_quantiles(cfg, load, err);
    require_readable(cfg.targets_path);
    const auto targets = forecast_io::load_targets_file(cfg.targets_path);
    const auto recs = harness::score_quantile_forecasts(specs, load.accepted, targets);
    OutTable t("scores", {{"forecaster", false}, {"location", false}, {"date", false},
                          {"horizon", true}, {"loss", false}, {"score", true}});
    for (const auto& r : recs) {
      t.add({r.forecaster, r.location, r.date, std::to_string(r.horizon), r.loss_tag, fmt(r.loss_value)});
    }
    emit(cfg, t, out);
    err << "score: " << recs.size() << " scores from " << load.accepted.size() << " forecasts\n";
    return rejected ? kExitData : kExitOk;
  }
  require(!cfg.dists.empty() && !cfg.ys.empty(), "score needs --dist and --y, or --forecasts");
  OutTable t("scores", {{"loss", false}, {"forecast", false}, {"y", true}, {"score", true}});
  for (const auto& spec : specs) {
    for (const auto& d : cfg.dists) {
      const auto F = families::parse_distribution(d);
      const scoring::Scorer scorer(spec, F);
      for (double y : cfg.ys) t.add({spec.describe(), F->describe(), fmt(y), fmt(scorer(y))});
    }
  }
  emit(cfg, t, out);
  err << "score: " << t.rows.size() << " scores\n";
  return kExitOk;
}

int cmd_diverge(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require(!cfg.losses.empty(), "diverge needs --loss");
  require(!cfg.forecast_dists.empty() && !cfg.target_dist.empty(),
          "diverge needs --forecast and --target");
  require(cfg.method == "auto" || cfg.method == "quadrature" || cfg.method == "monte-carlo",
          "--method must be auto, quadrature or monte-carlo");
  const auto specs = parse_losses(cfg.losses);
  const auto G = families::parse_distribution(cfg.target_dist);
  OutTable t("divergences", {{"loss", false}, {"forecast", false}, {"target", false},
                             {"divergence", true}, {"method", false}, {"error", true}});
  for (const auto& spec : specs) {
    for (const auto& f : cfg.forecast_dists) {
      const auto F = families::parse_distribution(f);
      divergence::DivergenceValue v;
      if (cfg.method == "auto") {
        v = divergence::div(spec, F, G);
      } else if (cfg.method == "quadrature") {
        v.value = divergence::div_by_subtraction(spec, F, G);
        v.method = divergence::Method::kQuadrature;
      } else {
        divergence::MonteCarloOptions mc;
        mc.draws = cfg.draws;
        mc.seed = cfg.seed;
        v = divergence::div_monte_carlo(spec, F, G, mc);
      }
      t.add({spec.describe(), F->describe(), G->describe(), fmt(v.value),
             divergence::to_string(v.method), fmt(v.error_estimate)});
    }
  }
  emit(cfg, t, out);
  err << "diverge: " << t.rows.size() << " divergences\n";
  return kExitOk;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool is_location_family(const std::string& spec) {
  const std::string head = spec.substr(0, spec.find(':'));
  return ends_with(head, "-location");
}

int cmd_asymmetry(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require(!cfg.scale_families.empty() || !cfg.expfams.empty(),
          "asymmetry needs --family or --expfam");
  require(cfg.scale_families.empty() || !cfg.losses.empty(), "asymmetry --family needs --loss");
  const auto specs = parse_losses(cfg.losses);
  const std::vector<double> sigmas = cfg.sigmas.empty() ? std::vector<double>{2.0} : cfg.sigmas;
  const std::vector<double> mus = cfg.mus.empty() ? std::vector<double>{1.0} : cfg.mus;
  const std::vector<double> etas = cfg.etas.empty() ? std::vector<double>{1.0} : cfg.etas;
  const std::vector<double> thetas = cfg.thetas.empty() ? std::vector<double>{2.0} : cfg.thetas;
  OutTable t("verdicts", {{"loss", false}, {"family", false}, {"mode", false}, {"param", true},
                          {"lhs", true}, {"rhs", true}, {"verdict", false}, {"margin", true}});
  auto add = [&](const std::string& loss, const std::string& fam, const std::string& mode, double p,
                 const asymmetry::AsymmetryVerdict& v) {
    const std::string verdict = asymmetry::to_string(v.comparison);
    t.add({loss, fam, mode, fmt(p), fmt(v.d_lhs), fmt(v.d_rhs), verdict, fmt(v.margin)});
    err << loss << " " << fam << " " << mode << " " << fmt(p) << ": " << verdict;
    if (v.flagged) err << " [flagged: " << v.note << "]";
    err << "\n";
  };
  for (const auto& fam : cfg.scale_families) {
    if (is_location_family(fam)) {
      const auto L = families::parse_location_family(fam);
      for (const auto& spec : specs) {
        for (double mu : mus) add(spec.describe(), fam, "location", mu, asymmetry::location_verdict(spec, L, mu));
      }
    } else {
      const auto S = families::parse_scale_family(fam);
      for (const auto& spec : specs) {
        for (double s : sigmas) add(spec.describe(), fam, "scale", s, asymmetry::scale_verdict(spec, S, s));
      }
    }
  }
  for (const auto& text : cfg.expfams) {
    const auto desc = families::parse_expfam(text);
    for (double eta : etas) {
      const std::string fam = text + "@eta=" + fmt(eta);
      for (double theta : thetas) {
        const auto nat = asymmetry::expfam_verdict(desc, eta, theta);
        add("log", fam, "natural", theta, nat.verdict);
        err << "  probe " << asymmetry::to_string(nat.probe) << "\n";
        add("log", fam, "conventional", theta,
            asymmetry::expfam_conventional_verdict(desc, desc.from_natural(eta), theta));
      }
    }
  }
  emit(cfg, t, out);
  return kExitOk;
}

int cmd_hedge(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require(!cfg.shifts.empty(), "hedge needs --shift");
  require(!cfg.scale_families.empty() || !cfg.expfams.empty(), "hedge needs --family or --expfam");
  OutTable t("hedges", {{"loss", false}, {"family", false}, {"shift", false}, {"sigma_star", true},
                        {"baseline", true}, {"hedged", true}, {"direction", false}});
  std::vector<hedging::ShiftLaw> shifts;
  for (const auto& s : cfg.shifts) shifts.push_back(hedging::parse_shift_law(s));
  if (!cfg.scale_families.empty()) {
    require(!cfg.losses.empty(), "hedge --family needs --loss");
    const auto specs = parse_losses(cfg.losses);
    for (const auto& fam : cfg.scale_families) {
      const auto S = families::parse_scale_family(fam);
      for (const auto& spec : specs) {
        for (const auto& sh : shifts) {
          const auto h = hedging::optimal_scale(spec, S, sh);
          t.add({spec.describe(), fam, sh.describe(), fmt(h.optimum), fmt(h.baseline_loss),
                 fmt(h.hedged_loss), hedging::to_string(h.direction)});
          err << spec.describe() << " " << fam << " " << sh.describe() << ": sigma*=" << fmt(h.optimum)
              << " " << hedging::to_string(h.direction) << (h.at_boundary ? " [at search boundary]" : "")
              << "\n";
        }
      }
    }
  }
  for (const auto& text : cfg.expfams) {
    for (const auto& l : cfg.losses) {
      require(scoring::parse_loss(l).tag == scoring::LossTag::kLog,
              "hedge --expfam is defined for log loss only");
    }
    const auto desc = families::parse_expfam(text);
    for (const auto& sh : shifts) {
      const auto h = hedging::hedge_expfam_optimum(desc, sh);
      t.add({"log", text, sh.describe(), fmt(h.optimum), fmt(h.baseline_loss), fmt(h.hedged_loss),
             hedging::to_string(h.direction)});
      err << "log " << text << " " << sh.describe() << ": eta*=" << fmt(h.optimum) << " ("
          << desc.conventional() << "=" << fmt(h.optimum_conventional) << ") "
          << hedging::to_string(h.direction) << "\n";
    }
  }
  emit(cfg, t, out);
  return kExitOk;
}

void emit_heatmap(const RunConfig& cfg, const std::string& name, const harness::HeatmapGrid& g,
                  std::ostream& out, std::ostream& err) {
  OutTable t(name, {{"mu", true}, {"sigma", true}, {"loss", true}});
  for (std::size_t i = 0; i < g.mu_axis.size(); ++i) {
    for (std::size_t j = 0; j < g.sigma_axis.size(); ++j) {
      t.add({fmt(g.mu_axis[i]), fmt(g.sigma_axis[j]), fmt(g.cell(i, j))});
    }
  }
  emit(cfg, t, out);
  err << name << ": argmin at mu=" << fmt(g.argmin_mu()) << " sigma=" << fmt(g.argmin_sigma())
      << "\n";
}

int cmd_heatmap(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require(!cfg.losses.empty(), "heatmap needs --loss");
  const auto specs = parse_losses(cfg.losses);
  require(specs.size() == 1 || !cfg.out_dir.empty(), "several heatmaps need --out");
  const auto mu = cfg.mu_range.empty() ? harness::default_mu_axis() : parse_axis(cfg.mu_range, false);
  const auto sigma = cfg.log2_sigma_range.empty() ? harness::default_sigma_axis()
                                                  : parse_axis(cfg.log2_sigma_range, true);
  if (cfg.al_p) {
    const auto grids = harness::asymmetric_laplace_grid(*cfg.al_p, specs, mu, sigma);
    for (std::size_t k = 0; k < specs.size(); ++k) {
      emit_heatmap(cfg, "heatmap_al_" + specs[k].describe(), grids[k], out, err);
    }
    return kExitOk;
  }
  std::vector<harness::HeatmapPair> pairs;
  std::size_t rejected = 0;
  if (!cfg.forecasts_path.empty()) {
    require(!cfg.targets_path.empty(), "heatmap --forecasts needs --targets");
    forecast_io::ForecastLoad load;
    rejected = load_quantiles(cfg, load, err);
    require_readable(cfg.targets_path);
    const auto targets = forecast_io::load_targets_file(cfg.targets_path);
    for (const auto& q : load.accepted) {
      const auto it = targets.find(forecast_io::task_of(q.meta));
      if (it == targets.end()) continue;
      pairs.push_back({forecasts::quantile_to_distribution(q), it->second});
    }
  } else {
    require(cfg.dists.size() == 1, "heatmap needs one --dist, --forecasts or --asymmetric-laplace");
    const auto D = families::parse_distribution(cfg.dists[0]);
    Rng rng = substream(cfg.seed, 0);
    for (std::size_t i = 0; i < cfg.draws; ++i) pairs.push_back({D, D->sample(rng)});
  }
  for (const auto& spec : specs) {
    emit_heatmap(cfg, "heatmap_" + spec.describe(), harness::heatmap(spec, pairs, mu, sigma), out, err);
  }
  return rejected ? kExitData : kExitOk;
}

int cmd_rank(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require(!cfg.losses.empty(), "rank needs --loss");
  require(!cfg.forecasts_path.empty() && !cfg.targets_path.empty(), "rank needs --forecasts and --targets");
  const auto specs = parse_losses(cfg.losses);
  forecast_io::ForecastLoad load;
  const std::size_t rejected = load_quantiles(cfg, load, err);
  require_readable(cfg.targets_path);
  const auto targets = forecast_io::load_targets_file(cfg.targets_path);
  const auto table = harness::standardized_ranking(harness::score_quantile_forecasts(specs, load.accepted, targets));
  OutTable t("ranking", {{"forecaster", false}, {"loss_tag", false}, {"mean_std_rank", true},
                         {"mean_std_variance_rank", true}});
  for (const auto& r : table.rows) {
    t.add({r.forecaster, r.loss_tag, fmt(r.mean_std_rank), fmt(r.mean_std_variance_rank)});
  }
  emit(cfg, t, out);
  err << "rank: " << table.rows.size() << " rows, " << table.degenerate_groups
      << " single-forecaster group(s) skipped\n";
  return rejected ? kExitData : kExitOk;
}

int cmd_dispersion(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require(!cfg.samples_path.empty(), "dispersion needs --samples");
  require_readable(cfg.samples_path);
  const auto div = harness::parse_flip_divergence(cfg.flip_divergence);
  const auto table = csv::read_file(cfg.samples_path);
  table.require_columns({"unit", "set", "value"});
  const std::size_t cu = table.column("unit");
  const std::size_t cs = table.column("set");
  const std::size_t cv = table.column("value");
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> units;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const double v = csv::parse_number(row[cv], "value on line " + std::to_string(table.lines[i]));
    if (row[cs] == "forecast") {
      units[row[cu]].first.push_back(v);
    } else if (row[cs] == "target") {
      units[row[cu]].second.push_back(v);
    } else {
      throw Error(ErrorCode::kDataError, "line " + std::to_string(table.lines[i]) +
                                             ": set must be forecast or target");
    }
  }
  OutTable t("dispersion", {{"unit", false}, {"a", true}, {"d_original", true}, {"d_flipped", true},
                            {"divergence", false}});
  std::size_t improved = 0;
  for (const auto& [unit, s] : units) {
    const auto r = harness::dispersion_flip(s.first, s.second, div);
    improved += r.d_flipped < r.d_original;
    t.add({unit, fmt(r.a), fmt(r.d_original), fmt(r.d_flipped), harness::to_string(div)});
  }
  emit(cfg, t, out);
  err << "dispersion: flip lowered the divergence in " << improved << "/" << units.size() << " unit(s)\n";
  return kExitOk;
}

int cmd_selftest(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  std::vector<checks::Check> chosen;
  for (const auto& c : checks::invariant_checks()) chosen.push_back(c);
  if (cfg.acceptance) {
    for (const auto& c : checks::acceptance_checks()) chosen.push_back(c);
  }
  int failed = 0;
  int ran = 0;
  for (const auto& c : chosen) {
    if (!cfg.filter.empty() && c.id.find(cfg.filter) == std::string::npos) continue;
    const auto r = c.run(cfg.seed);
    ++ran;
    failed += !r.passed;
    out << checks::format_result(r) << "\n" << std::flush;
  }
  out << "selftest: " << ran - failed << "/" << ran << " passed\n";
  return failed ? kExitFailure : kExitOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonConvergence:
    case ErrorCode::kNonIntegrable:
    case ErrorCode::kNonIntegrableWeight:
    case ErrorCode::kExpectationOutsideRange:
      return kExitNumeric;
    case ErrorCode::kDataError:
    case ErrorCode::kAtom:
    case ErrorCode::kCrossing:
    case ErrorCode::kTooFewLevels:
    case ErrorCode::kDegenerateSpacing:
    case ErrorCode::kTooFewSamples:
    case ErrorCode::kZeroVariance:
    case ErrorCode::kEmptyPairs:
    case ErrorCode::kDegenerateGroup:
    case ErrorCode::kSeriesTooShort:
    case ErrorCode::kDimensionMismatch:
      return kExitData;
    default:
      return kExitUsage;
  }
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  const char* env = std::getenv("ASYMSCORE_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) throw UsageError("ASYMSCORE_THREADS must be a positive integer");
  return static_cast<int>(n);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Asymmetry analysis for proper scoring rules", "asymscore"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker thread cap (default: ASYMSCORE_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", cfg.json, "Emit JSON (mirrors each CSV when --out is set)");
  app.add_option("--out", cfg.out_dir, "Output directory for CSV/JSON artifacts");
  app.require_subcommand(1);

  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto* score = sub("score", "Score forecasts against outcomes");
  score->add_option("--loss", cfg.losses, "Loss spec, e.g. crps, energy:1.5, twcrps:2")->required();
  score->add_option("--dist", cfg.dists, "Forecast distribution, e.g. normal:0,1");
  score->add_option("--y", cfg.ys, "Outcome");
  score->add_option("--forecasts", cfg.forecasts_path, "Quantile forecast CSV");
  score->add_option("--targets", cfg.targets_path, "Target CSV");
  score->add_option("--rejected", cfg.rejected_path, "Rejected-record sidecar path");

  auto* diverge = sub("diverge", "Divergence d(F, G) of a forecast from a target");
  diverge->add_option("--loss", cfg.losses, "Loss spec")->required();
  diverge->add_option("--forecast", cfg.forecast_dists, "Forecast distribution F")->required();
  diverge->add_option("--target", cfg.target_dist, "Target distribution G")->required();
  diverge->add_option("--method", cfg.method, "auto, quadrature or monte-carlo")->capture_default_str();
  diverge->add_option("--draws", cfg.draws, "Monte Carlo draws")->capture_default_str()->check(CLI::PositiveNumber);

  auto* asym = sub("asymmetry", "Over/under-penalization verdicts");
  asym->add_option("--loss", cfg.losses, "Loss spec");
  asym->add_option("--family", cfg.scale_families, "Scale or location family, e.g. gamma-scale:3");
  asym->add_option("--sigma", cfg.sigmas, "Scale deviation factor > 1 (default 2)");
  asym->add_option("--mu", cfg.mus, "Location shift (default 1)");
  asym->add_option("--expfam", cfg.expfams, "Exponential-family descriptor, e.g. poisson-rate");
  asym->add_option("--eta", cfg.etas, "Target natural parameter (default 1)");
  asym->add_option("--theta", cfg.thetas, "Deviation factor (default 2)");

  auto* hedge = sub("hedge", "Optimal forecast under a test-time shift");
  hedge->add_option("--loss", cfg.losses, "Loss spec");
  hedge->add_option("--family", cfg.scale_families, "Scale family");
  hedge->add_option("--expfam", cfg.expfams, "Exponential-family descriptor (log loss)");
  hedge->add_option("--shift", cfg.shifts, "two-point:a, log-uniform:a or log-normal:s, optional @center")
      ->required();

  auto* heat = sub("heatmap", "Mean loss over affine re-targets of the forecasts");
  heat->add_option("--loss", cfg.losses, "Loss spec")->required();
  heat->add_option("--dist", cfg.dists, "Synthetic target: outcomes drawn from this law");
  heat->add_option("--draws", cfg.draws, "Synthetic outcome count")->capture_default_str()->check(CLI::PositiveNumber);
  heat->add_option("--forecasts", cfg.forecasts_path, "Quantile forecast CSV");
  heat->add_option("--targets", cfg.targets_path, "Target CSV");
  heat->add_option("--rejected", cfg.rejected_path, "Rejected-record sidecar path");
  heat->add_option("--asymmetric-laplace", cfg.al_p, "Exact grid for a standardized asymmetric Laplace target with skew p");
  heat->add_option("--mu-range", cfg.mu_range, "lo:hi:step (default -2:2:0.1)");
  heat->add_option("--log2-sigma-range", cfg.log2_sigma_range, "lo:hi:step in log2 sigma (default -2:2:0.1)");

  auto* rank = sub("rank", "Standardized ranks per loss");
  rank->add_option("--loss", cfg.losses, "Loss spec")->required();
  rank->add_option("--forecasts", cfg.forecasts_path, "Quantile forecast CSV")->required();
  rank->add_option("--targets", cfg.targets_path, "Target CSV")->required();
  rank->add_option("--rejected", cfg.rejected_path, "Rejected-record sidecar path");

  auto* disp = sub("dispersion", "Dispersion-flip experiment per unit");
  disp->add_option("--samples", cfg.samples_path, "CSV with unit,set,value (set: forecast|target)")->required();
  disp->add_option("--divergence", cfg.flip_divergence, "kl or cramer")->capture_default_str();

  auto* self = sub("selftest", "Run the invariant suite");
  self->add_flag("--acceptance", cfg.acceptance, "Also run the acceptance criteria");
  self->add_option("--filter", cfg.filter, "Only checks whose id contains this text");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    set_max_threads(resolve_threads(cfg.threads));
    if (!cfg.out_dir.empty()) fs::create_directories(cfg.out_dir);
    if (*score) return cmd_score(cfg, out, err);
    if (*diverge) return cmd_diverge(cfg, out, err);
    if (*asym) return cmd_asymmetry(cfg, out, err);
    if (*hedge) return cmd_hedge(cfg, out, err);
    if (*heat) return cmd_heatmap(cfg, out, err);
    if (*rank) return cmd_rank(cfg, out, err);
    if (*disp) return cmd_dispersion(cfg, out, err);
    if (*self) return cmd_selftest(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace asymscore::cli

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

#include "asymscore/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <utility>

#include "asymscore/asymmetry.hpp"
#include "asymscore/csv.hpp"
#include "asymscore/divergence.hpp"
#include "asymscore/error.hpp"
#include "asymscore/expfam.hpp"
#include "asymscore/families.hpp"
#include "asymscore/forecast_io.hpp"
#include "asymscore/forecasts.hpp"
#include "asymscore/harness.hpp"
#include "asymscore/hedging.hpp"
#include "asymscore/lambert_w.hpp"
#include "asymscore/quadrature.hpp"
#include "asymscore/scoring.hpp"

namespace asymscore::checks {

namespace {

using asymmetry::Comparison;
using families::DistPtr;
using scoring::LossSpec;
using scoring::LossTag;

constexpr double kInf = std::numeric_limits<double>::infinity();

class Report {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok) {
      ++failed_;
      if (failures_.size() < 3) failures_.push_back(what);
    }
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool passed() const { return total_ > 0 && failed_ == 0; }
  std::string detail() const {
    std::string out = std::to_string(total_ - failed_) + "/" + std::to_string(total_) + " ok";
    for (const auto& n : notes_) out += "; " + n;
    for (const auto& f : failures_) out += "; FAIL " + f;
    return out;
  }

 private:
  int total_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool close(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::fabs(a - b) <= tol;
}

bool rel_close(double a, double b, double tol) {
  return close(a, b, tol * std::max({1.0, std::fabs(a), std::fabs(b)}));
}

double log_uniform(Rng& rng, double lo, double hi) {
  return lo * std::exp(std::log(hi / lo) * uniform01(rng));
}

DistPtr dist(const std::string& spec) { return families::parse_distribution(spec); }

LossSpec of(LossTag t) { return LossSpec::of(t); }

std::string comparison_name(Comparison c) { return asymmetry::to_string(c); }

// Oracle KL(G || F) from the densities, independent of the closed forms.
double kl_quadrature(const families::Distribution& F, const families::Distribution& G) {
  if (G.is_discrete()) {
    const long top = static_cast<long>(std::ceil(G.mean() + 60.0 * G.sd() + 60.0));
    double s = 0.0;
    for (long k = static_cast<long>(std::max(0.0, G.support().lower)); k <= top; ++k) {
      const double lg = G.log_pdf(static_cast<double>(k));
      if (lg == -kInf) continue;
      s += std::exp(lg) * (lg - F.log_pdf(static_cast<double>(k)));
    }
    return s;
  }
  auto f = [&](double x) {
    const double lg = G.log_pdf(x);
    if (!(lg > -745.0)) return 0.0;
    const double lf = F.log_pdf(x);
    if (lf == -kInf) return kInf;
    return std::exp(lg) * (lg - lf);
  };
  return numerics::integrate(f, G.breakpoints(), {1e-14, 1e-12, 20000}).value;
}

template <class Body>
Check make(std::string id, std::string name, Body body) {
  Check c;
  c.id = id;
  c.name = name;
  c.run = [id, name, body](std::uint64_t seed) {
    CheckResult res;
    res.id = id;
    res.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    Report r;
    try {
      body(r, seed);
      res.passed = r.passed();
      res.detail = r.detail();
    } catch (const std::exception& e) {
      res.passed = false;
      res.detail = r.detail() + "; exception: " + e.what();
    }
    res.seconds = elapsed_since(t0);
    return res;
  };
  return c;
}

// ---------------------------------------------------------------------------
// Acceptance criteria

void scale_sweep(Report& r, std::uint64_t) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<LossSpec> specs = {of(LossTag::kCrps), LossSpec::energy(1.5),
                                       of(LossTag::kQuadratic), of(LossTag::kDs),
                                       of(LossTag::kSpherical)};
  const Comparison want[] = {Comparison::kOverPenalized, Comparison::kOverPenalized,
                             Comparison::kUnderPenalized, Comparison::kUnderPenalized,
                             Comparison::kSymmetric};
  const std::vector<std::string> fams = {"normal-scale",  "exponential-scale", "laplace-scale",
                                         "gamma-scale:3", "weibull-scale:2",   "uniform-scale"};
  const double sigmas[] = {1.5, 2.0, 5.0};
  const std::size_t n = specs.size() * fams.size() * 3;
  std::vector<char> ok(n, 0);
  std::vector<std::string> msg(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
    const std::size_t s = k / (fams.size() * 3);
    const std::size_t f = (k / 3) % fams.size();
    const double sigma = sigmas[k % 3];
    msg[k] = specs[s].describe() + " " + fams[f] + " sigma=" + num(sigma);
    try {
      const auto v = asymmetry::scale_verdict(specs[s], families::parse_scale_family(fams[f]), sigma);
      ok[k] = v.comparison == want[s];
      msg[k] += " -> " + comparison_name(v.comparison);
    } catch (const std::exception& e) {
      msg[k] += std::string(" threw ") + e.what();
    }
  }
  int hits = 0;
  for (std::size_t k = 0; k < n; ++k) {
    r.expect(ok[k], msg[k]);
    hits += ok[k];
  }
  const double secs = elapsed_since(t0);
  r.note(std::to_string(hits) + "/" + std::to_string(n) + " verdicts in " + num(secs) + " s");
  r.expect(secs < 60.0, "sweep runtime " + num(secs) + " s");
  const auto e = families::parse_scale_family("exponential-scale");
  const double d = divergence::div(of(LossTag::kCrps), e.member(2.0), e.member(1.0)).value;
  r.expect(close(d, 1.0 / 6.0, 1e-8), "exponential crps divergence at 2 = " + num(d));
}

void expfam_sweep(Report& r, std::uint64_t) {
  const auto& kinds = families::expfam_catalog();
  const std::vector<std::string> conventional_over = {
      "inverse-gamma-scale", "generalized-gamma-shape", "pareto-shape", "inverse-gaussian-shape",
      "beta-shape", "poisson-rate"};
  const double etas[] = {0.5, 1.0, 2.0};
  const double thetas[] = {1.5, 3.0};
  const std::size_t n = kinds.size() * 6;
  std::vector<std::vector<std::pair<bool, std::string>>> out(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
    const std::string& kind = kinds[k / 6];
    const double eta = etas[(k % 6) / 2];
    const double theta = thetas[k % 2];
    const std::string tag = kind + " eta=" + num(eta) + " theta=" + num(theta);
    auto& o = out[k];
    try {
      const auto desc = families::expfam_descriptor(kind);
      const auto nat = asymmetry::expfam_verdict(desc, eta, theta);
      o.emplace_back(nat.verdict.comparison == Comparison::kOverPenalized,
                     tag + " natural " + comparison_name(nat.verdict.comparison));
      const bool over = std::find(conventional_over.begin(), conventional_over.end(), kind) !=
                        conventional_over.end();
      const auto conv = asymmetry::expfam_conventional_verdict(desc, desc.from_natural(eta), theta);
      o.emplace_back(conv.comparison ==
                         (over ? Comparison::kOverPenalized : Comparison::kUnderPenalized),
                     tag + " conventional " + comparison_name(conv.comparison));
      // Exact Bregman values against a quadrature KL on the densities.
      const bool real = desc.omega() == families::Omega::kReal;
      const double up = real ? eta + theta : eta * theta;
      const double down = real ? eta - theta : eta / theta;
      const auto G = desc.member(eta);
      for (double e1 : {up, down}) {
        const double b = desc.bregman(e1, eta);
        const double q = kl_quadrature(*desc.member(e1), *G);
        o.emplace_back(rel_close(b, q, 1e-7),
                       tag + " bregman " + num(b) + " vs quadrature " + num(q));
      }
    } catch (const std::exception& e) {
      o.emplace_back(false, tag + " threw " + e.what());
    }
  }
  int verdicts = 0;
  for (const auto& o : out) {
    for (std::size_t i = 0; i < o.size(); ++i) {
      r.expect(o[i].first, o[i].second);
      if (i < 2 && o[i].first) ++verdicts;
    }
  }
  r.note(std::to_string(kinds.size()) + " families, " + std::to_string(verdicts) + "/" +
         std::to_string(2 * n) + " verdicts");
}

void location_sweep(Report& r, std::uint64_t) {
  const std::vector<LossSpec> specs = {of(LossTag::kLog),
                                       of(LossTag::kQuadratic),
                                       of(LossTag::kSpherical),
                                       of(LossTag::kCrps),
                                       LossSpec::twcrps(scoring::WeightFunction::power(0.0)),
                                       LossSpec::energy(1.5),
                                       of(LossTag::kDs)};
  for (const std::string fam : {"normal-location", "laplace-location", "uniform-location"}) {
    const auto L = families::parse_location_family(fam);
    for (const auto& spec : specs) {
      for (double mu : {0.5, 2.0}) {
        const auto v = asymmetry::location_verdict(spec, L, mu);
        r.expect(v.comparison == Comparison::kSymmetric && v.margin <= 1e-6 * std::max(1.0, std::fabs(v.d_lhs)),
                 spec.describe() + " " + fam + " mu=" + num(mu) + " margin " + num(v.margin));
      }
    }
  }
  for (double p : {0.2, 0.8}) {
    const auto L = families::parse_location_family("asymmetric-laplace-location:0,1," + num(p));
    const auto v = asymmetry::location_verdict(of(LossTag::kLog), L, 1.0);
    r.expect(v.comparison != Comparison::kSymmetric && v.margin > 1e-3 && v.flagged,
             "log asymmetric-laplace p=" + num(p) + " margin " + num(v.margin));
    r.note("log on p=" + num(p) + ": " + comparison_name(v.comparison) + " by " + num(v.margin));
  }
}

void rescalability(Report& r, std::uint64_t) {
  const DistPtr F = std::make_shared<families::Normal>(0.3, 1.4);
  const DistPtr G = std::make_shared<families::Normal>(0.0, 1.0);
  const std::vector<LossSpec> specs = {of(LossTag::kCrps),
                                       LossSpec::energy(1.5),
                                       of(LossTag::kQuadratic),
                                       of(LossTag::kLog),
                                       of(LossTag::kDs),
                                       LossSpec::twcrps(scoring::WeightFunction::power(2.0))};
  const double gammas[] = {1.0, 1.5, -1.0, 0.0, 0.0, 3.0};
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const double g = asymmetry::scaling_exponent(specs[i]);
    r.expect(g == gammas[i], specs[i].describe() + " exponent " + num(g));
    const auto fit = asymmetry::fit_scaling_exponent(specs[i], F, G);
    r.expect(std::fabs(fit.slope - gammas[i]) <= 1e-3,
             specs[i].describe() + " slope " + num(fit.slope) + " vs " + num(gammas[i]));
  }
}

void spherical_identities(Report& r, std::uint64_t seed) {
  Rng rng = substream(seed, 5);
  const auto spec = of(LossTag::kSpherical);
  for (int k = 0; k < 20; ++k) {
    const auto fam = families::parse_scale_family(k % 2 ? "gamma-scale:3" : "normal-scale");
    const double s = log_uniform(rng, 0.25, 4.0);
    const double t = log_uniform(rng, 0.25, 4.0);
    const auto G = fam.member(1.0);
    const double d = divergence::div(spec, fam.member(s), fam.member(t)).value;
    const double d1 = std::pow(t, -0.5) * divergence::div(spec, fam.member(s / t), G).value;
    const double d2 = std::sqrt(s / t) * divergence::div(spec, fam.member(t), fam.member(s)).value;
    r.expect(close(d, d1, 1e-7), "scaling identity " + num(d) + " vs " + num(d1));
    r.expect(close(d, d2, 1e-7), "swap identity " + num(d) + " vs " + num(d2));
  }
}

void heatmap_reproduction(Report& r, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng = substream(seed, 6);
  const DistPtr N = std::make_shared<families::Normal>(0.0, 1.0);
  std::vector<harness::HeatmapPair> pairs;
  for (int i = 0; i < 10000; ++i) pairs.push_back({N, standard_normal(rng)});
  const auto mu = harness::default_mu_axis();
  const auto sigma = harness::default_sigma_axis();
  const double step_mu = 0.1 + 1e-9;
  const double step_log2 = 0.1 + 1e-9;
  for (LossTag tag : {LossTag::kLog, LossTag::kCrps}) {
    const auto g = harness::heatmap(of(tag), pairs, mu, sigma);
    r.expect(g.mu_axis.size() == 41 && g.sigma_axis.size() == 41, "grid is 41 x 41");
    r.expect(std::fabs(g.argmin_mu()) <= step_mu && std::fabs(std::log2(g.argmin_sigma())) <= step_log2,
             scoring::to_string(tag) + " argmin at (" + num(g.argmin_mu()) + ", " +
                 num(g.argmin_sigma()) + ")");
    const double wide = g.cell(20, 30);
    const double narrow = g.cell(20, 10);
    const bool ok = tag == LossTag::kLog ? wide < narrow : wide > narrow;
    r.expect(ok, scoring::to_string(tag) + " cell(0,2)=" + num(wide) + " cell(0,0.5)=" + num(narrow));
  }
  const double secs = elapsed_since(t0);
  r.expect(secs < 300.0, "runtime " + num(secs) + " s");
}

void hedging_checks(Report& r, std::uint64_t seed) {
  const auto fam = families::parse_scale_family("exponential-scale");
  const auto shift = hedging::ShiftLaw::two_point(2.0);
  const auto crps = hedging::optimal_scale(of(LossTag::kCrps), fam, shift);
  const auto quad = hedging::optimal_scale(of(LossTag::kQuadratic), fam, shift);
  const double margin = 10.0 * 1e-6;
  r.expect(crps.optimum > 1.0 && crps.baseline_loss - crps.hedged_loss > margin,
           "crps sigma*=" + num(crps.optimum) + " gain " + num(crps.baseline_loss - crps.hedged_loss));
  r.expect(quad.optimum < 1.0 && quad.baseline_loss - quad.hedged_loss > margin,
           "quadratic sigma*=" + num(quad.optimum) + " gain " + num(quad.baseline_loss - quad.hedged_loss));
  r.note("crps sigma*=" + num(crps.optimum) + ", quadratic sigma*=" + num(quad.optimum));

  const auto ex = families::expfam_descriptor("exponential-scale");
  const auto h = hedging::hedge_expfam_optimum(ex, shift);
  r.expect(close(h.optimum, 0.8, 1e-9), "eta*=" + num(h.optimum));

  Rng rng = substream(seed, 7);
  const auto pois = families::expfam_descriptor("poisson-rate");
  const auto pshift = hedging::ShiftLaw::two_point(1.0, 0.0);
  const double pstar = hedging::hedge_expfam_optimum(pois, pshift).optimum;
  for (int k = 0; k < 20; ++k) {
    const bool use_poisson = k % 2 == 1;
    const auto& desc = use_poisson ? pois : ex;
    const auto& sh = use_poisson ? pshift : shift;
    const double star = use_poisson ? pstar : h.optimum;
    const double eta = use_poisson ? -2.0 + 4.0 * uniform01(rng) : log_uniform(rng, 0.2, 5.0);
    const double gap = hedging::expfam_expected_divergence(desc, sh, eta) -
                       hedging::expfam_expected_divergence(desc, sh, star);
    const double b = desc.bregman(eta, star);
    r.expect(close(gap, b, 1e-7), desc.kind() + " certificate at eta=" + num(eta) + ": " +
                                      num(gap) + " vs " + num(b));
  }
}

void lambert_roots(Report& r, std::uint64_t seed) {
  Rng rng = substream(seed, 8);
  const std::vector<std::string> kinds = {"exponential-scale", "normal-scale", "gamma-scale",
                                          "weibull-scale", "generalized-gamma-scale",
                                          "log-normal-scale", "laplace-scale", "inverse-gamma-scale"};
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto desc = families::expfam_descriptor(kinds[k % kinds.size()]);
    const double eta = log_uniform(rng, 0.2, 5.0);
    const double eta2 = eta * log_uniform(rng, 0.25, 4.0);
    const auto [a, b] = asymmetry::loss_diff_root(desc, eta, eta2);
    const double target = desc.bregman(eta2, eta);
    const double ea = std::fabs(desc.bregman(a, eta) - target);
    const double eb = std::fabs(desc.bregman(b, eta) - target);
    worst = std::max({worst, ea, eb});
    r.expect(ea <= 1e-9 && eb <= 1e-9, desc.kind() + " roots " + num(a) + ", " + num(b));
    r.expect((eta2 > eta) == (b < eta2) || eta2 == eta, "root ordering at eta2/eta=" + num(eta2 / eta));
  }
  double worst_w = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const bool minus_one = k % 2 == 1;
    const double x = minus_one ? -std::exp(-1.0) * uniform01(rng)
                               : -std::exp(-1.0) + (30.0 + std::exp(-1.0)) * uniform01(rng);
    const auto br = minus_one ? numerics::LambertBranch::kMinusOne : numerics::LambertBranch::kPrincipal;
    const double w = numerics::lambert_w(br, x);
    const double res = std::fabs(w * std::exp(w) - x) / std::max(std::fabs(x), 1e-300);
    worst_w = std::max(worst_w, res);
  }
  r.expect(worst_w < 1e-12, "lambert residual " + num(worst_w));
  r.note("root residual " + num(worst) + ", W residual " + num(worst_w));
}

Comparison trichotomy_rule(double alpha, bool scale, double mu) {
  if (scale) {
    if (alpha == -1.0) return Comparison::kSymmetric;
    return alpha > -1.0 ? Comparison::kOverPenalized : Comparison::kUnderPenalized;
  }
  if (alpha == 0.0 || mu == 0.0) return Comparison::kSymmetric;
  return (alpha > 0.0) == (mu > 0.0) ? Comparison::kOverPenalized : Comparison::kUnderPenalized;
}

void trichotomy(Report& r, std::uint64_t) {
  const auto scale = families::parse_scale_family("exponential-scale");
  // Base moved to [2, inf) so the power weight stays valid after +-mu.
  const families::LocationFamily loc(std::make_shared<families::Exponential>(1.0)->affine(2.0, 1.0),
                                     "exponential-location");
  struct Case {
    double alpha;
    bool scale;
    double param;
  };
  const Case cases[] = {{-1.5, true, 2.0}, {-1.0, true, 2.0},   {1.0, true, 2.0},
                        {0.0, false, 1.0}, {1.0, false, 1.0},   {1.0, false, -1.0},
                        {-0.5, false, 1.0}, {-0.5, false, -1.0}, {2.0, false, 0.0}};
  for (const auto& c : cases) {
    const auto v = asymmetry::power_crps_trichotomy(
        c.alpha, c.scale ? asymmetry::TrichotomyMode::kScale : asymmetry::TrichotomyMode::kLocation,
        &scale, &loc, c.param);
    const auto want = trichotomy_rule(c.alpha, c.scale, c.param);
    r.expect(v.comparison == want, std::string(c.scale ? "scale" : "location") + " alpha=" +
                                       num(c.alpha) + " param=" + num(c.param) + " -> " +
                                       comparison_name(v.comparison));
  }
}

std::vector<double> hub_levels() {
  std::vector<double> lv = {0.01, 0.025};
  for (int k = 1; k <= 19; ++k) lv.push_back(0.05 * k);
  lv.push_back(0.975);
  lv.push_back(0.99);
  return lv;
}

void quantile_pipeline(Report& r, std::uint64_t seed) {
  const families::Normal N(0.0, 1.0);
  forecasts::QuantileForecast q;
  q.levels = hub_levels();
  for (double t : q.levels) q.values.push_back(N.quantile(t));
  r.expect(q.levels.size() == 23, "23 levels");
  const auto recon = forecasts::quantile_to_distribution(q);
  const DistPtr exact = std::make_shared<families::Normal>(0.0, 1.0);
  Rng rng = substream(seed, 10);
  double sr = 0.0;
  double se = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double y = standard_normal(rng);
    sr += recon->crps(y);
    se += scoring::score(of(LossTag::kCrps), exact, y);
  }
  sr /= 10000.0;
  se /= 10000.0;
  r.expect(std::fabs(sr - se) < 0.01, "mean crps " + num(sr) + " vs exact " + num(se));
  r.note("mean crps gap " + num(std::fabs(sr - se)));

  std::istringstream text(
      "forecaster,location,date,horizon,level,value\n"
      "atom,US,2021-01-02,1,0.1,1\natom,US,2021-01-02,1,0.25,2\n"
      "atom,US,2021-01-02,1,0.5,2\natom,US,2021-01-02,1,0.75,3\n"
      "cross,US,2021-01-02,1,0.1,1\ncross,US,2021-01-02,1,0.25,3\n"
      "cross,US,2021-01-02,1,0.5,2\ncross,US,2021-01-02,1,0.75,4\n"
      "good,US,2021-01-02,1,0.1,1\ngood,US,2021-01-02,1,0.25,2\n"
      "good,US,2021-01-02,1,0.5,3\ngood,US,2021-01-02,1,0.75,4\n");
  const auto load = forecast_io::load_forecasts(csv::read(text));
  r.expect(load.accepted.size() == 1 && load.accepted[0].meta.forecaster == "good", "one accepted");
  std::string atom_reason;
  std::string cross_reason;
  for (const auto& rej : load.rejected) {
    if (rej.meta.forecaster == "atom") atom_reason = rej.reason;
    if (rej.meta.forecaster == "cross") cross_reason = rej.reason;
  }
  r.expect(atom_reason == "Atom", "atom fixture rejected as '" + atom_reason + "'");
  r.expect(cross_reason == "Crossing", "crossing fixture rejected as '" + cross_reason + "'");
}

void dispersion_replicates(Report& r, std::uint64_t seed) {
  const int reps = 200;
  std::vector<char> cramer_ok(reps, 0);
  std::vector<char> kl_ok(reps, 0);
  std::vector<std::string> errors(reps);
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < reps; ++k) {
    Rng rng = substream(seed, 1000 + static_cast<std::uint64_t>(k));
    std::vector<double> wide;
    std::vector<double> narrow;
    std::vector<double> g;
    for (int i = 0; i < 200; ++i) {
      wide.push_back(2.0 * standard_normal(rng));
      narrow.push_back(0.5 * standard_normal(rng));
      g.push_back(standard_normal(rng));
    }
    try {
      const auto c = harness::dispersion_flip(wide, g, harness::FlipDivergence::kCramer);
      const auto l = harness::dispersion_flip(narrow, g, harness::FlipDivergence::kKl);
      cramer_ok[k] = c.a > 1.0 && c.d_flipped < c.d_original;
      kl_ok[k] = l.a < 1.0 && l.d_flipped < l.d_original;
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  }
  int nc = 0;
  int nk = 0;
  for (int k = 0; k < reps; ++k) {
    nc += cramer_ok[k];
    nk += kl_ok[k];
    r.expect(errors[k].empty(), "replicate " + std::to_string(k) + ": " + errors[k]);
  }
  r.expect(nc >= 190, "cramer improved in " + std::to_string(nc) + "/200");
  r.expect(nk >= 190, "kl improved in " + std::to_string(nk) + "/200");
  r.note("cramer " + std::to_string(nc) + "/200, kl " + std::to_string(nk) + "/200");
}

void aggregation(Report& r, std::uint64_t) {
  const DistPtr G = std::make_shared<families::Normal>(0.0, 1.0);
  const DistPtr F = std::make_shared<families::Normal>(0.3, 1.2);
  const DistPtr H = std::make_shared<families::Normal>(-0.5, 0.8);
  struct Case {
    LossSpec spec;
    int sign;
  };
  const Case cases[] = {{of(LossTag::kLog), 0},       {of(LossTag::kDs), 0},
                        {of(LossTag::kCrps), 1},      {LossSpec::energy(1.5), 1},
                        {of(LossTag::kQuadratic), -1}};
  for (const auto& c : cases) {
    const double dF = divergence::div(c.spec, F, G).value;
    const double dH = divergence::div(c.spec, H, G).value;
    r.expect(dF < dH, c.spec.describe() + " premise d(F,G) < d(H,G)");
    const auto res = harness::aggregation_confounding(c.spec, F, H, G, 4.0);
    const double tol = 1e-12 * std::max(1.0, dH);
    for (double v : {res.specializations, res.missing}) {
      const int s = v > tol ? 1 : v < -tol ? -1 : 0;
      r.expect(s == c.sign, c.spec.describe() + " difference " + num(v));
    }
  }
  // Spherical needs the three laws in one scale family.
  const DistPtr Fs = std::make_shared<families::Normal>(0.0, 1.2);
  const DistPtr Hs = std::make_shared<families::Normal>(0.0, 0.7);
  const auto sph = of(LossTag::kSpherical);
  r.expect(divergence::div(sph, Fs, G).value < divergence::div(sph, Hs, G).value,
           "spherical premise");
  const auto res = harness::aggregation_confounding(sph, Fs, Hs, G, 4.0);
  r.expect(res.specializations < 0.0 && res.missing < 0.0,
           "spherical differences " + num(res.specializations) + ", " + num(res.missing));
}

void oracle_consistency(Report& r, std::uint64_t seed) {
  const std::vector<LossSpec> specs = {of(LossTag::kLog),  of(LossTag::kQuadratic),
                                       of(LossTag::kSpherical), of(LossTag::kCrps),
                                       LossSpec::twcrps(scoring::WeightFunction::power(1.0)),
                                       LossSpec::energy(1.5), of(LossTag::kDs)};
  const std::size_t n = specs.size() * 20;
  std::vector<std::vector<std::pair<bool, std::string>>> out(n);
  std::vector<double> zs(n, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
    Rng rng = substream(seed, 13000 + static_cast<std::uint64_t>(k));
    const LossSpec& spec = specs[k / 20];
    const bool positive = spec.tag == LossTag::kTwCrps || uniform01(rng) < 0.5;
    DistPtr F;
    DistPtr G;
    if (positive) {
      F = std::make_shared<families::Exponential>(log_uniform(rng, 0.5, 2.0));
      G = std::make_shared<families::Exponential>(log_uniform(rng, 0.5, 2.0));
    } else {
      F = std::make_shared<families::Normal>(uniform01(rng) - 0.5, log_uniform(rng, 0.5, 2.0));
      G = std::make_shared<families::Normal>(uniform01(rng) - 0.5, log_uniform(rng, 0.5, 2.0));
    }
    const std::string tag = spec.describe() + " F=" + F->describe() + " G=" + G->describe();
    auto& o = out[k];
    try {
      const double closed = divergence::expected_loss(spec, F, G);
      const double quad = divergence::expected_loss_quadrature(spec, F, G);
      divergence::MonteCarloOptions mc;
      mc.draws = 1000000;
      mc.seed = splitmix64(seed + static_cast<std::uint64_t>(k));
      const auto m = divergence::expected_loss_monte_carlo(spec, F, G, mc);
      o.emplace_back(rel_close(closed, quad, 1e-6), tag + " closed " + num(closed) + " quad " + num(quad));
      const double dev = std::fabs(m.value - closed);
      zs[k] = m.error_estimate > 0.0 ? dev / m.error_estimate : 0.0;
      o.emplace_back(dev <= 1e-6 || dev <= 3.0 * m.error_estimate,
                     tag + " mc " + num(m.value) + " +- " + num(m.error_estimate));
    } catch (const std::exception& e) {
      o.emplace_back(false, tag + " threw " + e.what());
    }
  }
  for (const auto& o : out) {
    for (const auto& [ok, msg] : o) r.expect(ok, msg);
  }
  r.note(std::to_string(n) + " triples, max |z| " + num(*std::max_element(zs.begin(), zs.end())));
}

void cauchy_symmetry(Report& r, std::uint64_t) {
  const auto fam = families::parse_scale_family("cauchy-scale");
  const auto G = fam.member(1.0);
  for (double s : {2.0, 5.0}) {
    const double up = divergence::div(of(LossTag::kLog), fam.member(s), G).value;
    const double down = divergence::div(of(LossTag::kLog), fam.member(1.0 / s), G).value;
    r.expect(close(up, down, 1e-6), "sigma=" + num(s) + ": " + num(up) + " vs " + num(down));
  }
}

// ---------------------------------------------------------------------------
// Module invariants

const std::vector<std::string>& catalog_specs() {
  static const std::vector<std::string> k = {
      "normal:0.5,2",        "exponential:1.5",       "laplace:0,1.3",
      "weibull:1.7,2",       "gamma:2.5,1.2",         "generalized-gamma:1,1.5,2.5",
      "symmetric-generalized-gamma:1,2,1.5", "log-normal:0.2,0.6", "inverse-gamma:6,1",
      "pareto:5,1",          "inverse-gaussian:1,2",  "beta:2,3",
      "poisson:3.5",         "cauchy:0,1",            "asymmetric-laplace:0,1,0.3",
      "uniform:-1,2"};
  return k;
}

void inv_family_mass(Report& r, std::uint64_t) {
  for (const auto& s : catalog_specs()) {
    const auto D = dist(s);
    double mass = 0.0;
    if (D->is_discrete()) {
      for (int k = 0; k < 400; ++k) mass += D->pdf(k);
    } else {
      mass = numerics::integrate([&](double x) { return D->pdf(x); }, D->breakpoints()).value;
    }
    r.expect(close(mass, 1.0, 1e-8), s + " mass " + num(mass));
    if (D->is_discrete()) continue;
    for (int i = 1; i <= 99; ++i) {
      const double t = i / 100.0;
      const double c = D->cdf(D->quantile(t));
      if (!close(c, t, 1e-8)) {
        r.expect(false, s + " cdf(quantile(" + num(t) + ")) = " + num(c));
        break;
      }
    }
  }
}

void inv_bregman(Report& r, std::uint64_t seed) {
  Rng rng = substream(seed, 101);
  for (const auto& kind : families::expfam_catalog()) {
    const auto d = families::expfam_descriptor(kind);
    const bool real = d.omega() == families::Omega::kReal;
    for (int k = 0; k < 10; ++k) {
      const double a = real ? 4.0 * uniform01(rng) - 2.0 : log_uniform(rng, 0.2, 5.0);
      const double b = real ? 4.0 * uniform01(rng) - 2.0 : log_uniform(rng, 0.2, 5.0);
      const double v = d.bregman(a, b);
      const double id = d.logA(a) - d.logA(b) - d.dA(b) * (a - b);
      r.expect(v > 0.0 && rel_close(v, id, 1e-9), kind + " bregman " + num(v) + " vs " + num(id));
      r.expect(d.bregman(a, a) == 0.0, kind + " bregman at equal arguments");
    }
  }
}

void inv_exponential_member(Report& r, std::uint64_t) {
  const auto d = families::expfam_descriptor("exponential-scale");
  for (double sigma : {0.3, 1.0, 2.5}) {
    const auto a = d.member(1.0 / sigma);
    const auto b = families::make_family("exponential", {sigma});
    for (double x : {0.0, 0.1, 0.7, 2.0, 9.0}) {
      r.expect(rel_close(a->pdf(x), b->pdf(x), 1e-14), "pdf at " + num(x));
    }
  }
}

void inv_sampling(Report& r, std::uint64_t seed) {
  std::size_t idx = 0;
  for (const auto& s : catalog_specs()) {
    ++idx;
    const auto D = dist(s);
    if (!D->has_finite_variance()) continue;
    Rng rng = substream(seed, 200 + idx);
    const int n = 100000;
    std::vector<double> x(n);
    for (auto& v : x) v = D->sample(rng);
    double m = 0.0;
    for (double v : x) m += v;
    m /= n;
    double m2 = 0.0;
    double m4 = 0.0;
    for (double v : x) {
      const double d2 = (v - m) * (v - m);
      m2 += d2;
      m4 += d2 * d2;
    }
    m2 /= n;
    m4 /= n;
    const double se_mean = std::sqrt(D->variance() / n);
    const double se_var = std::sqrt(std::max(m4 - m2 * m2, 0.0) / n);
    r.expect(std::fabs(m - D->mean()) <= 5.0 * se_mean, s + " sample mean " + num(m));
    r.expect(std::fabs(m2 - D->variance()) <= 5.0 * se_var, s + " sample variance " + num(m2));
  }
}

forecasts::QuantileForecast random_quantiles(Rng& rng) {
  const auto all = hub_levels();
  forecasts::QuantileForecast q;
  for (double t : all) {
    if (uniform01(rng) < 0.6) q.levels.push_back(t);
  }
  while (q.levels.size() < 4) q.levels = {0.1, 0.25, 0.5, 0.75, 0.9};
  const families::Gamma base(1.0 + 3.0 * uniform01(rng), 1.0);
  for (double t : q.levels) q.values.push_back(base.quantile(t) * (1.0 + 0.02 * uniform01(rng)));
  std::sort(q.values.begin(), q.values.end());
  return q;
}

void inv_quantile_roundtrip(Report& r, std::uint64_t seed) {
  Rng rng = substream(seed, 300);
  for (int k = 0; k < 25; ++k) {
    const auto q = random_quantiles(rng);
    const auto d = forecasts::quantile_to_distribution(q);
    for (std::size_t i = 0; i < q.levels.size(); ++i) {
      r.expect(close(d->quantile(q.levels[i]), q.values[i], 1e-8), "quantile round trip");
      r.expect(close(d->cdf(q.values[i]), q.levels[i], 1e-9), "cdf at knot");
    }
    for (std::size_t i = 0; i + 1 < q.levels.size(); ++i) {
      const double m = 0.5 * (d->segment_left(i) + d->segment_right(i)) * (q.values[i + 1] - q.values[i]);
      r.expect(close(m, q.levels[i + 1] - q.levels[i], 1e-10), "segment mass " + num(m));
    }
    std::vector<double> pts = {-kInf};
    pts.insert(pts.end(), q.values.begin(), q.values.end());
    pts.push_back(kInf);
    const double mass = numerics::integrate([&](double x) { return d->pdf(x); }, pts).value;
    r.expect(close(mass, 1.0, 1e-10), "total mass " + num(mass));
  }
}

void inv_affine_identity(Report& r, std::uint64_t seed) {
  Rng rng = substream(seed, 301);
  std::vector<double> samples;
  for (int i = 0; i < 50; ++i) samples.push_back(standard_normal(rng));
  const std::vector<DistPtr> ds = {dist("normal:1,2"), dist("gamma:2,1.5"),
                                   forecasts::quantile_to_distribution(random_quantiles(rng)),
                                   forecasts::kde_fit(samples)};
  for (const auto& D : ds) {
    const auto A = forecasts::affine_to(D, D->mean(), D->sd());
    for (double p : {0.05, 0.3, 0.5, 0.8, 0.97}) {
      const double x = D->quantile(p);
      r.expect(close(A->pdf(x), D->pdf(x), 1e-12), D->kind() + " affine identity at " + num(x));
    }
  }
}

void inv_quadratic_penalty(Report& r, std::uint64_t) {
  const DistPtr F = dist("normal:0,0.1");
  const DistPtr G = dist("normal:0,1");
  const double partial_F = -2.0 * divergence::density_inner(*F, *G);
  const double partial_G = -2.0 * scoring::density_norm2(*G);
  r.expect(partial_F < partial_G, "without the penalty the wrong forecast wins");
  const double full_F = divergence::expected_loss(of(LossTag::kQuadratic), F, G);
  const double full_G = divergence::expected_loss(of(LossTag::kQuadratic), G, G);
  r.expect(full_G < full_F, "with the penalty the target wins");
}

void inv_crps_homogeneity(Report& r, std::uint64_t seed) {
  Rng rng = substream(seed, 302);
  const std::vector<std::string> specs = {"normal:0.3,1.2", "gamma:2,1", "laplace:0,0.7",
                                          "weibull:1.5,1", "uniform:-1,2"};
  for (int k = 0; k < 20; ++k) {
    const auto F = dist(specs[k % specs.size()]);
    const double s = log_uniform(rng, 0.2, 5.0);
    const double y = F->quantile(0.02 + 0.96 * uniform01(rng));
    const double a = scoring::score(of(LossTag::kCrps), F->affine(0.0, s), s * y);
    const double b = s * scoring::score(of(LossTag::kCrps), F, y);
    r.expect(close(a, b, 1e-9), F->describe() + " homogeneity " + num(a) + " vs " + num(b));
  }
}

void inv_ds_moments(Report& r, std::uint64_t) {
  const DistPtr A = dist("normal:1,2");
  const DistPtr B = std::make_shared<families::Laplace>(1.0, std::sqrt(2.0));
  for (double y : {-3.0, 0.0, 1.0, 2.5}) {
    r.expect(rel_close(scoring::score(of(LossTag::kDs), A, y), scoring::score(of(LossTag::kDs), B, y), 1e-12),
             "ds at y=" + num(y));
  }
}

DistPtr random_law(Rng& rng) {
  const double a = log_uniform(rng, 0.5, 2.0);
  const double m = uniform01(rng) - 0.5;
  switch (static_cast<int>(uniform01(rng) * 4.0)) {
    case 0: return std::make_shared<families::Normal>(m, a);
    case 1: return std::make_shared<families::Laplace>(m, a);
    case 2: return std::make_shared<families::Gamma>(1.5 + uniform01(rng), a);
    default: return std::make_shared<families::Weibull>(1.2 + uniform01(rng), a);
  }
}

void inv_divergence_symmetry(Report& r, std::uint64_t seed) {
  const std::vector<LossSpec> sym = {of(LossTag::kCrps), of(LossTag::kQuadratic),
                                     LossSpec::twcrps(scoring::WeightFunction::power(2.0)),
                                     LossSpec::energy(1.5)};
  Rng rng = substream(seed, 400);
  std::vector<std::pair<DistPtr, DistPtr>> pairs;
  for (int k = 0; k < 30; ++k) pairs.emplace_back(random_law(rng), random_law(rng));
  std::vector<std::vector<std::pair<bool, std::string>>> out(pairs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(pairs.size()); ++k) {
    const auto& [F, G] = pairs[k];
    for (const auto& s : sym) {
      const double a = divergence::div(s, F, G).value;
      const double b = divergence::div(s, G, F).value;
      out[k].emplace_back(close(a, b, 1e-8), s.describe() + " " + num(a) + " vs " + num(b));
    }
  }
  for (const auto& o : out) {
    for (const auto& [ok, msg] : o) r.expect(ok, msg);
  }
  for (LossTag t : {LossTag::kLog, LossTag::kSpherical, LossTag::kDs}) {
    double worst = 0.0;
    for (const auto& [F, G] : pairs) {
      if (F->support().lower != G->support().lower) continue;
      worst = std::max(worst, std::fabs(divergence::div(of(t), F, G).value -
                                        divergence::div(of(t), G, F).value));
      if (worst > 1e-3) break;
    }
    r.expect(worst > 1e-3, scoring::to_string(t) + " asymmetry witness " + num(worst));
  }
}

void inv_rescalability(Report& r, std::uint64_t seed) {
  Rng rng = substream(seed, 401);
  const DistPtr F = dist("gamma:2,1");
  const DistPtr G = dist("weibull:1.5,1.2");
  const std::vector<LossSpec> specs = {of(LossTag::kCrps), LossSpec::energy(1.5),
                                       of(LossTag::kQuadratic), of(LossTag::kLog),
                                       of(LossTag::kDs),
                                       LossSpec::twcrps(scoring::WeightFunction::power(0.5))};
  for (const auto& spec : specs) {
    const double gamma = asymmetry::scaling_exponent(spec);
    for (int k = 0; k < 3; ++k) {
      const double s = log_uniform(rng, 0.5, 3.0);
      const double t = log_uniform(rng, 0.5, 3.0);
      const double a = divergence::div(spec, F->affine(0.0, s), G->affine(0.0, t)).value;
      const double b = std::pow(t, gamma) * divergence::div(spec, F->affine(0.0, s / t), G).value;
      r.expect(rel_close(a, b, 1e-7), spec.describe() + " " + num(a) + " vs " + num(b));
    }
  }
}

void inv_translation(Report& r, std::uint64_t seed) {
  Rng rng = substream(seed, 402);
  const DistPtr F = dist("laplace:0,1.3");
  const DistPtr G = dist("normal:0.2,1");
  const std::vector<LossSpec> specs = {of(LossTag::kLog),  of(LossTag::kQuadratic),
                                       of(LossTag::kSpherical), of(LossTag::kCrps),
                                       LossSpec::twcrps(scoring::WeightFunction::power(0.0)),
                                       LossSpec::energy(1.5), of(LossTag::kDs)};
  for (const auto& spec : specs) {
    const double mu = 4.0 * uniform01(rng) - 2.0;
    const double nu = 4.0 * uniform01(rng) - 2.0;
    const double a = divergence::div(spec, F->affine(mu, 1.0), G->affine(nu, 1.0)).value;
    const double b = divergence::div(spec, F->affine(mu - nu, 1.0), G).value;
    r.expect(close(a, b, 1e-7), spec.describe() + " " + num(a) + " vs " + num(b));
  }
}

void inv_probe_consistency(Report& r, std::uint64_t) {
  for (const auto& kind : families::expfam_catalog()) {
    const auto d = families::expfam_descriptor(kind);
    for (double eta : {0.5, 1.0, 2.0}) {
      const auto v = asymmetry::expfam_verdict(d, eta, 3.0);
      r.expect(v.probe == asymmetry::Monotonicity::kIncreasing,
               kind + " probe " + asymmetry::to_string(v.probe));
    }
  }
}

void inv_propriety_floor(Report& r, std::uint64_t) {
  const auto fam = families::parse_scale_family("exponential-scale");
  for (double a : {2.0, 3.0}) {
    const auto shift = hedging::ShiftLaw::two_point(a);
    const DistPtr mix = std::make_shared<families::Mixture>(
        std::vector<DistPtr>{fam.member(a), fam.member(1.0 / a)}, std::vector<double>{0.5, 0.5});
    for (LossTag t : {LossTag::kCrps, LossTag::kQuadratic}) {
      const auto h = hedging::optimal_scale(of(t), fam, shift);
      const double m = 0.5 * (divergence::expected_loss(of(t), mix, fam.member(a)) +
                              divergence::expected_loss(of(t), mix, fam.member(1.0 / a)));
      r.expect(m <= h.hedged_loss + 1e-9, scoring::to_string(t) + " mixture " + num(m) +
                                              " vs hedged " + num(h.hedged_loss));
    }
  }
}

void inv_jensen_direction(Report& r, std::uint64_t) {
  for (double g : {0.5, 1.0, 2.0}) {
    for (double k : {1.0, 3.0}) {
      const auto d = families::expfam_descriptor("generalized-gamma-scale", {g, k});
      for (double a : {1.5, 4.0}) {
        const auto h = hedging::hedge_expfam_optimum(d, hedging::ShiftLaw::two_point(a));
        r.expect(h.optimum_conventional > d.from_natural(1.0),
                 "gamma=" + num(g) + " k=" + num(k) + " a=" + num(a) + " sigma*=" +
                     num(h.optimum_conventional));
      }
    }
  }
}

void inv_reversal(Report& r, std::uint64_t) {
  const auto fam = families::parse_scale_family("exponential-scale");
  const auto G = fam.member(1.0);
  for (double a : {1.5, 2.0, 4.0}) {
    const double x = divergence::div(of(LossTag::kLog), G, fam.member(a)).value;
    const double y = divergence::div(of(LossTag::kLog), fam.member(1.0 / a), G).value;
    r.expect(close(x, y, 1e-7), "a=" + num(a) + ": " + num(x) + " vs " + num(y));
  }
}

void inv_ranking(Report& r, std::uint64_t seed) {
  Rng rng = substream(seed, 500);
  const int n = 5;
  std::vector<harness::ScoredRecord> recs;
  std::vector<harness::ScoredRecord> moved;
  for (int g = 0; g < 12; ++g) {
    const double a = log_uniform(rng, 0.1, 10.0);
    const double b = 4.0 * uniform01(rng) - 2.0;
    for (int f = 0; f < n; ++f) {
      const double loss = std::floor(4.0 * uniform01(rng));  // ties on purpose
      const harness::ScoredRecord rec{"f" + std::to_string(f), "L" + std::to_string(g),
                                      "2021-01-02", 1, "crps", loss, uniform01(rng)};
      recs.push_back(rec);
      auto m = rec;
      m.loss_value = a * loss + b;
      moved.push_back(m);
    }
  }
  const auto t1 = harness::standardized_ranking(recs);
  const auto t2 = harness::standardized_ranking(moved);
  double avg = 0.0;
  for (std::size_t i = 0; i < t1.rows.size(); ++i) {
    r.expect(t1.rows[i].mean_std_rank == t2.rows[i].mean_std_rank, "rank invariance");
    avg += t1.rows[i].mean_std_rank;
  }
  avg /= static_cast<double>(t1.rows.size());
  r.expect(close(avg, (n + 1.0) / (2.0 * n), 1e-12), "panel average " + num(avg));
}

void inv_standardizer(Report& r, std::uint64_t seed) {
  Rng rng = substream(seed, 501);
  std::vector<double> s;
  for (int i = 0; i < 400; ++i) s.push_back(0.05 * i + standard_normal(rng));
  const auto z = harness::RollingStandardizer(21).apply(s);
  double m = 0.0;
  for (double v : z.values) m += v;
  m /= 400.0;
  double v2 = 0.0;
  for (double v : z.values) v2 += (v - m) * (v - m);
  v2 /= 400.0;
  r.expect(v2 > 0.7 && v2 < 1.3, "standardized variance " + num(v2));
  for (std::size_t t = 0; t < s.size(); ++t) {
    r.expect(close(z.inverse(t, z.values[t]), s[t], 1e-12), "inverse round trip");
  }
  const auto c = harness::RollingStandardizer(5).apply(std::vector<double>(20, 3.0));
  for (double v : c.values) r.expect(v == 0.0, "constant series");
}

void inv_expfam_descriptor(Report& r, std::uint64_t seed) {
  std::uint64_t idx = 0;
  for (const auto& kind : families::expfam_catalog()) {
    const auto d = families::expfam_descriptor(kind);
    const bool real = d.omega() == families::Omega::kReal;
    for (double eta : real ? std::vector<double>{-1.0, 0.0, 1.5} : std::vector<double>{0.5, 1.0, 2.0}) {
      const std::string tag = kind + " eta=" + num(eta);
      r.expect(d.d2A(eta) > 0.0, tag + " curvature " + num(d.d2A(eta)));
      const double h = 1e-4 * std::max(1.0, std::fabs(eta));
      const double fd1 = (d.logA(eta + h) - d.logA(eta - h)) / (2.0 * h);
      const double fd2 = (d.dA(eta + h) - d.dA(eta - h)) / (2.0 * h);
      r.expect(rel_close(fd1, d.dA(eta), 1e-6), tag + " A' " + num(d.dA(eta)) + " vs " + num(fd1));
      r.expect(rel_close(fd2, d.d2A(eta), 1e-6), tag + " A'' " + num(d.d2A(eta)) + " vs " + num(fd2));
      Rng rng = substream(seed, 600 + idx++);
      const auto M = d.member(eta);
      const int n = 100000;
      double s = 0.0;
      double s2 = 0.0;
      for (int i = 0; i < n; ++i) {
        const double t = d.T(M->sample(rng));
        s += t;
        s2 += t * t;
      }
      const double m = s / n;
      const double se = std::sqrt(std::max(s2 / n - m * m, 0.0) / n);
      r.expect(std::fabs(m - d.dA(eta)) <= 5.0 * se + 1e-12,
               tag + " mean of T " + num(m) + " vs " + num(d.dA(eta)));
    }
  }
}

void inv_asymmetric_laplace(Report& r, std::uint64_t) {
  const families::AsymmetricLaplace a(0.7, 1.3, 0.5);
  for (double x : {0.1, 0.5, 1.0, 3.0, 8.0}) {
    r.expect(rel_close(a.pdf(0.7 + x), a.pdf(0.7 - x), 1e-14), "p=1/2 symmetry at " + num(x));
  }
  for (double p : {0.2, 0.5, 0.8}) {
    const families::AsymmetricLaplace b(-0.4, 0.6, p);
    const double mass =
        numerics::integrate([&](double x) { return b.pdf(x); }, b.breakpoints()).value;
    r.expect(close(mass, 1.0, 1e-8), "p=" + num(p) + " mass " + num(mass));
  }
}

void inv_clamped_mass(Report& r, std::uint64_t) {
  forecasts::QuantileForecast q;
  q.levels = {0.1, 0.25, 0.5, 0.75, 0.9};
  q.values = {0.0, 0.01, 5.0, 5.1, 5.2};
  const auto d = forecasts::quantile_to_distribution(q);
  const auto dens = d->knot_densities();
  r.expect(std::any_of(dens.begin(), dens.end(), [](double v) { return v == 0.0; }),
           "fixture triggers clamping");
  std::vector<double> pts = {-kInf};
  pts.insert(pts.end(), q.values.begin(), q.values.end());
  pts.push_back(kInf);
  const double mass = numerics::integrate([&](double x) { return d->pdf(x); }, pts).value;
  r.expect(close(mass, 1.0, 1e-10), "total mass after clamping " + num(mass));
  for (std::size_t i = 0; i < q.levels.size(); ++i) {
    r.expect(close(d->cdf(q.values[i]), q.levels[i], 1e-9), "cdf at knot " + std::to_string(i));
  }
}

}  // namespace

const std::vector<Check>& acceptance_checks() {
  static const std::vector<Check> k = {
      make("C1", "scale-family verdict sweep", scale_sweep),
      make("C2", "exponential-family verdict sweep", expfam_sweep),
      make("C3", "location-family symmetry sweep", location_sweep),
      make("C4", "scaling exponent regression", rescalability),
      make("C5", "spherical scale identities", spherical_identities),
      make("C6", "normal heatmap argmin and asymmetry", heatmap_reproduction),
      make("C7", "scale and natural-parameter hedging", hedging_checks),
      make("C8", "Lambert roots of the loss difference", lambert_roots),
      make("C9", "power-weighted crps trichotomy", trichotomy),
      make("C10", "quantile reconstruction pipeline", quantile_pipeline),
      make("C11", "dispersion flip replicates", dispersion_replicates),
      make("C12", "aggregation confounding signs", aggregation),
      make("C13", "closed form, quadrature and Monte Carlo agreement", oracle_consistency),
      make("C14", "Cauchy log-loss symmetry", cauchy_symmetry),
  };
  return k;
}

const std::vector<Check>& invariant_checks() {
  static const std::vector<Check> k = {
      make("inv.families.mass", "densities integrate to one and invert their cdf", inv_family_mass),
      make("inv.families.bregman", "Bregman identity and positivity", inv_bregman),
      make("inv.families.exponential_member", "natural member matches the scale law",
           inv_exponential_member),
      make("inv.families.sampling", "sample moments within five standard errors", inv_sampling),
      make("inv.families.expfam_descriptor", "log-partition derivatives and mean of T",
           inv_expfam_descriptor),
      make("inv.families.asymmetric_laplace", "asymmetric Laplace mass and symmetry",
           inv_asymmetric_laplace),
      make("inv.forecasts.roundtrip", "quantile round trip and mass", inv_quantile_roundtrip),
      make("inv.forecasts.affine_identity", "affine_to at current moments is the identity",
           inv_affine_identity),
      make("inv.forecasts.clamped_mass", "mass after clamping a segment", inv_clamped_mass),
      make("inv.scoring.quadratic_penalty", "quadratic loss needs its penalty term",
           inv_quadratic_penalty),
      make("inv.scoring.crps_homogeneity", "crps under joint scaling", inv_crps_homogeneity),
      make("inv.scoring.oracle_consistency", "closed form, quadrature and Monte Carlo agree",
           oracle_consistency),
      make("inv.scoring.ds_moments", "ds depends on two moments only", inv_ds_moments),
      make("inv.divergence.symmetry", "symmetric and asymmetric divergences",
           inv_divergence_symmetry),
      make("inv.divergence.rescalability", "scale-family rescaling law", inv_rescalability),
      make("inv.divergence.translation", "translation invariance", inv_translation),
      make("inv.divergence.spherical", "spherical scale identities", spherical_identities),
      make("inv.divergence.aggregation", "aggregation confounding signs", aggregation),
      make("inv.divergence.cauchy", "Cauchy log-loss symmetry", cauchy_symmetry),
      make("inv.asymmetry.scale_sweep", "scale-family verdict sweep", scale_sweep),
      make("inv.asymmetry.expfam_sweep", "exponential-family verdict sweep", expfam_sweep),
      make("inv.asymmetry.location_sweep", "location-family symmetry sweep", location_sweep),
      make("inv.asymmetry.probe", "grid probe agrees with the analytic class",
           inv_probe_consistency),
      make("inv.asymmetry.lambert", "Lambert roots", lambert_roots),
      make("inv.hedging.propriety_floor", "mixture forecast beats the hedged scale",
           inv_propriety_floor),
      make("inv.hedging.certificate", "Bregman optimality certificate", hedging_checks),
      make("inv.hedging.jensen", "generalized gamma hedges inflate", inv_jensen_direction),
      make("inv.hedging.reversal", "log-loss reversal bookkeeping", inv_reversal),
      make("inv.harness.heatmap", "heatmap argmin near the target", heatmap_reproduction),
      make("inv.harness.ranking", "rank invariance and panel average", inv_ranking),
      make("inv.harness.standardizer", "rolling standardization", inv_standardizer),
  };
  return k;
}

std::vector<CheckResult> run_checks(const std::vector<Check>& checks, std::uint64_t seed) {
  std::vector<CheckResult> out;
  for (const auto& c : checks) out.push_back(c.run(seed));
  return out;
}

std::string format_result(const CheckResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
  return std::string(r.passed ? "PASS " : "FAIL ") + r.id + " " + r.name + " (" + r.detail +
         ") [" + secs + " s]";
}

}  // namespace asymscore::checks

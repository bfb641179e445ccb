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

#include "asymscore/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "asymscore/error.hpp"
#include "asymscore/quadrature.hpp"
#include "asymscore/special.hpp"

namespace asymscore::divergence {

namespace {

using families::Distribution;
using families::Exponential;
using families::Normal;
using scoring::LossTag;
using scoring::WeightFunction;

constexpr double kInf = std::numeric_limits<double>::infinity();
const numerics::QuadOptions kQuad{1e-11, 1e-11, 10000};
constexpr std::size_t kChunk = 4096;

double quad(const numerics::Integrand& f, std::vector<double> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 2) return 0.0;
  return numerics::integrate(f, std::move(pts), kQuad).value;
}

long lattice_top(const Distribution& F) {
  long k = std::max(0L, static_cast<long>(std::ceil(F.mean())));
  while (F.sf(static_cast<double>(k)) > 1e-18) ++k;
  return k + 1;
}

// Breakpoints of both laws; lattice laws contribute every integer of their
// effective range so piecewise-constant CDFs are integrated exactly.
std::vector<double> joint_points(const Distribution& F, const Distribution& G, double lo = -kInf) {
  std::vector<double> pts = families::merged_breakpoints(F, G);
  for (const Distribution* d : {&F, &G}) {
    if (!d->is_discrete()) continue;
    const long top = lattice_top(*d);
    for (long k = 0; k <= top + 1; ++k) pts.push_back(static_cast<double>(k));
  }
  if (lo > -kInf) {
    pts.erase(std::remove_if(pts.begin(), pts.end(), [lo](double x) { return x < lo; }),
              pts.end());
    pts.push_back(lo);
  }
  return pts;
}

const Normal* as_normal(const Distribution& d) { return dynamic_cast<const Normal*>(&d); }
const Exponential* as_exponential(const Distribution& d) {
  return dynamic_cast<const Exponential*>(&d);
}

// F(x) - G(x), formed from survival functions in the upper half.
double cdf_gap(const Distribution& F, const Distribution& G, double x) {
  const double fc = F.cdf(x);
  const double gc = G.cdf(x);
  if (fc + gc <= 1.0) return fc - gc;
  return G.sf(x) - F.sf(x);
}

// Expectation of h(Y) under G.
double expect(const Distribution& G, const Distribution& F, const numerics::Integrand& h) {
  if (G.is_discrete()) {
    const long top = lattice_top(G);
    double s = 0.0;
    for (long k = 0; k <= top; ++k) {
      const double p = G.pdf(static_cast<double>(k));
      if (p > 0.0) s += p * h(static_cast<double>(k));
    }
    return s;
  }
  return quad(
      [&](double y) {
        const double g = G.pdf(y);
        return g == 0.0 ? 0.0 : g * h(y);
      },
      joint_points(F, G));
}

double kl(const Distribution& F, const Distribution& G, Method& method) {
  const Normal* nf = as_normal(F);
  const Normal* ng = as_normal(G);
  if (nf && ng) {
    method = Method::kClosedForm;
    const double d = ng->mu() - nf->mu();
    const double sf = nf->sigma();
    const double sg = ng->sigma();
    return std::log(sf / sg) + (sg * sg + d * d) / (2.0 * sf * sf) - 0.5;
  }
  const Exponential* ef = as_exponential(F);
  const Exponential* eg = as_exponential(G);
  if (ef && eg) {
    method = Method::kClosedForm;
    const double r = eg->sigma() / ef->sigma();
    return r - 1.0 - std::log(r);
  }
  method = Method::kQuadrature;
  auto term = [&](double y) {
    const double lg = G.log_pdf(y);
    if (lg == -kInf) return 0.0;
    const double g = std::exp(lg);
    const double lf = F.log_pdf(y);
    // f underflowing where g is negligible is not a support mismatch.
    if (lf == -kInf) return g < 1e-280 ? 0.0 : kInf;
    return g * (lg - lf);
  };
  if (G.is_discrete()) return expect(G, F, [&](double y) { return term(y) / G.pdf(y); });
  return quad(term, joint_points(F, G));
}

double cramer(const Distribution& F, const Distribution& G, const WeightFunction* w,
              Method& method) {
  if (!w || w->is_constant()) {
    const Normal* nf = as_normal(F);
    const Normal* ng = as_normal(G);
    if (nf && ng) {
      method = Method::kClosedForm;
      const double s = std::hypot(nf->sigma(), ng->sigma());
      return numerics::normal_abs_moment(nf->mu() - ng->mu(), s, 1.0) -
             (nf->sigma() + ng->sigma()) / numerics::kSqrtPi;
    }
  }
  const Exponential* ef = as_exponential(F);
  const Exponential* eg = as_exponential(G);
  const double alpha = w ? w->alpha() : 0.0;
  if (ef && eg && (!w || (w->is_power() && alpha > -1.0))) {
    method = Method::kClosedForm;
    const double a1 = alpha + 1.0;
    const double s = ef->sigma();
    const double t = eg->sigma();
    const double c = std::exp(numerics::log_gamma(a1));
    return c * (std::pow(s / 2.0, a1) + std::pow(t / 2.0, a1) - 2.0 * std::pow(s * t / (s + t), a1));
  }
  method = Method::kQuadrature;
  const bool weighted = w && !w->is_constant();
  const double lo = weighted && w->nonnegative_domain() ? 0.0 : -kInf;
  const double v = quad(
      [&](double x) {
        const double g = cdf_gap(F, G, x);
        return g == 0.0 ? 0.0 : (weighted ? w->w(x) : 1.0) * g * g;
      },
      joint_points(F, G, lo));
  if (!std::isfinite(v) && weighted) {
    throw Error(ErrorCode::kNonIntegrableWeight, "weighted Cramer integral diverges");
  }
  return v;
}

// E|X - Y|^beta for independent X ~ F, Y ~ G.
double cross_energy(const Distribution& F, const Distribution& G, double beta, Method& method) {
  const Normal* nf = as_normal(F);
  const Normal* ng = as_normal(G);
  if (nf && ng) {
    method = Method::kClosedForm;
    return numerics::normal_abs_moment(nf->mu() - ng->mu(), std::hypot(nf->sigma(), ng->sigma()),
                                       beta);
  }
  const Exponential* ef = as_exponential(F);
  const Exponential* eg = as_exponential(G);
  if (ef && eg) {
    // X - Y is asymmetric Laplace with scales a (right) and b (left).
    method = Method::kClosedForm;
    const double a = ef->sigma();
    const double b = eg->sigma();
    return std::exp(numerics::log_gamma(beta + 1.0)) *
           (std::pow(a, beta + 1.0) + std::pow(b, beta + 1.0)) / (a + b);
  }
  method = Method::kQuadrature;
  if (beta == 1.0 && !F.is_discrete() && !G.is_discrete()) {
    // E|X - Y| = int F (1 - G) + G (1 - F).
    return quad([&](double x) { return F.cdf(x) * G.sf(x) + G.cdf(x) * F.sf(x); },
                joint_points(F, G));
  }
  return expect(G, F, [&](double y) { return scoring::abs_moment(F, y, beta); });
}

void require_moment(const Distribution& D) {
  if (!D.has_first_moment()) {
    throw Error(ErrorCode::kMomentRequired, D.describe() + " has no finite first moment");
  }
}

void require_variance(const Distribution& D) {
  if (!D.has_finite_variance()) {
    throw Error(ErrorCode::kMomentRequired, D.describe() + " has no finite variance");
  }
}

template <typename Body>
DivergenceValue monte_carlo(const MonteCarloOptions& options, const DistPtr& G, Body body) {
  const std::size_t n = options.draws;
  if (n < 2) throw Error(ErrorCode::kTooFewSamples, "Monte Carlo needs at least 2 draws");
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> sums(chunks, 0.0);
  std::vector<double> sq(chunks, 0.0);
  const long long nc = static_cast<long long>(chunks);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long c = 0; c < nc; ++c) {
    Rng rng = substream(options.seed, static_cast<std::uint64_t>(c));
    const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
    const std::size_t end = std::min(n, begin + kChunk);
    double s = 0.0;
    double s2 = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      const double v = body(G->sample(rng));
      s += v;
      s2 += v * v;
    }
    sums[static_cast<std::size_t>(c)] = s;
    sq[static_cast<std::size_t>(c)] = s2;
  }
  double s = 0.0;
  double s2 = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    s += sums[c];
    s2 += sq[c];
  }
  const double dn = static_cast<double>(n);
  const double mean = s / dn;
  const double var = std::max(0.0, (s2 - dn * mean * mean) / (dn - 1.0));
  DivergenceValue out;
  out.value = mean;
  out.method = Method::kMonteCarlo;
  out.error_estimate = std::sqrt(var / dn);
  if (!(out.error_estimate > 0.0)) out.error_estimate = std::numeric_limits<double>::min();
  return out;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::kClosedForm: return "closed_form";
    case Method::kQuadrature: return "quadrature";
    case Method::kMonteCarlo: return "monte_carlo";
  }
  return "unknown";
}

double density_inner(const Distribution& F, const Distribution& G) {
  const Normal* nf = as_normal(F);
  const Normal* ng = as_normal(G);
  if (nf && ng) {
    const double s = std::hypot(nf->sigma(), ng->sigma());
    return numerics::normal_pdf((nf->mu() - ng->mu()) / s) / s;
  }
  const Exponential* ef = as_exponential(F);
  const Exponential* eg = as_exponential(G);
  if (ef && eg) return 1.0 / (ef->sigma() + eg->sigma());
  if (F.is_discrete() != G.is_discrete()) {
    throw Error(ErrorCode::kUnsupported, "density product of a lattice and a continuous law");
  }
  return expect(G, F, [&](double y) { return F.pdf(y); });
}

DivergenceValue div(const LossSpec& spec, const DistPtr& Fp, const DistPtr& Gp) {
  spec.validate();
  const Distribution& F = *Fp;
  const Distribution& G = *Gp;
  DivergenceValue out;
  out.method = Method::kQuadrature;
  switch (spec.tag) {
    case LossTag::kLog:
      out.value = kl(F, G, out.method);
      break;
    case LossTag::kQuadratic: {
      const bool closed = (as_normal(F) && as_normal(G)) || (as_exponential(F) && as_exponential(G));
      if (closed) {
        out.method = Method::kClosedForm;
        out.value = scoring::density_norm2(F) + scoring::density_norm2(G) - 2.0 * density_inner(F, G);
      } else if (F.is_discrete() && G.is_discrete()) {
        const long top = std::max(lattice_top(F), lattice_top(G));
        double s = 0.0;
        for (long k = 0; k <= top; ++k) {
          const double d = F.pdf(static_cast<double>(k)) - G.pdf(static_cast<double>(k));
          s += d * d;
        }
        out.value = s;
      } else {
        out.value = quad(
            [&](double x) {
              const double d = F.pdf(x) - G.pdf(x);
              return d * d;
            },
            joint_points(F, G));
      }
      break;
    }
    case LossTag::kSpherical: {
      const bool closed = (as_normal(F) && as_normal(G)) || (as_exponential(F) && as_exponential(G));
      out.method = closed ? Method::kClosedForm : Method::kQuadrature;
      out.value = std::sqrt(scoring::density_norm2(G)) -
                  density_inner(F, G) / std::sqrt(scoring::density_norm2(F));
      break;
    }
    case LossTag::kCrps:
      require_moment(F);
      require_moment(G);
      out.value = cramer(F, G, nullptr, out.method);
      break;
    case LossTag::kTwCrps:
      spec.weight.check_against(F);
      spec.weight.check_against(G);
      if (spec.weight.is_constant()) {
        require_moment(F);
        require_moment(G);
      }
      out.value = cramer(F, G, &spec.weight, out.method);
      break;
    case LossTag::kEnergy: {
      require_moment(F);
      require_moment(G);
      const double b = spec.beta;
      out.value = cross_energy(F, G, b, out.method) -
                  0.5 * (scoring::self_energy(F, b) + scoring::self_energy(G, b));
      break;
    }
    case LossTag::kDs: {
      require_variance(F);
      require_variance(G);
      out.method = Method::kClosedForm;
      const double vf = F.variance();
      const double vg = G.variance();
      const double d = G.mean() - F.mean();
      out.value = std::log(vf / vg) + (vg - vf + d * d) / vf;
      break;
    }
  }
  return out;
}

double expected_loss(const LossSpec& spec, const DistPtr& Fp, const DistPtr& Gp) {
  spec.validate();
  const Distribution& F = *Fp;
  const Distribution& G = *Gp;
  switch (spec.tag) {
    case LossTag::kLog: {
      const Normal* nf = as_normal(F);
      const Normal* ng = as_normal(G);
      if (nf && ng) {
        const double d = ng->mu() - nf->mu();
        const double sf = nf->sigma();
        return std::log(sf) + numerics::kLogSqrt2Pi +
               (ng->sigma() * ng->sigma() + d * d) / (2.0 * sf * sf);
      }
      const Exponential* ef = as_exponential(F);
      const Exponential* eg = as_exponential(G);
      if (ef && eg) return std::log(ef->sigma()) + eg->sigma() / ef->sigma();
      return expect(G, F, [&](double y) {
        const double lf = F.log_pdf(y);
        return lf == -kInf ? kInf : -lf;
      });
    }
    case LossTag::kQuadratic:
      return scoring::density_norm2(F) - 2.0 * density_inner(F, G);
    case LossTag::kSpherical:
      return -density_inner(F, G) / std::sqrt(scoring::density_norm2(F));
    case LossTag::kCrps:
      return div(spec, Fp, Gp).value + 0.5 * scoring::self_energy(G, 1.0);
    case LossTag::kTwCrps:
      return div(spec, Fp, Gp).value + scoring::weighted_gini(G, spec.weight);
    case LossTag::kEnergy: {
      require_moment(F);
      require_moment(G);
      Method m;
      return cross_energy(F, G, spec.beta, m) - 0.5 * scoring::self_energy(F, spec.beta);
    }
    case LossTag::kDs: {
      require_variance(F);
      require_variance(G);
      const double vf = F.variance();
      const double d = G.mean() - F.mean();
      return std::log(vf) + (G.variance() + d * d) / vf;
    }
  }
  return 0.0;
}

double expected_loss_quadrature(const LossSpec& spec, const DistPtr& F, const DistPtr& G) {
  const scoring::Scorer scorer(spec, F);
  const double lo = spec.tag == LossTag::kTwCrps && spec.weight.nonnegative_domain() ? 0.0 : -kInf;
  if (G->is_discrete()) return expect(*G, *F, [&](double y) { return scorer(y); });
  return quad(
      [&](double y) {
        const double g = G->pdf(y);
        return g == 0.0 ? 0.0 : g * scorer(y);
      },
      joint_points(*F, *G, lo));
}

DivergenceValue expected_loss_monte_carlo(const LossSpec& spec, const DistPtr& F,
                                          const DistPtr& G, const MonteCarloOptions& options) {
  const scoring::Scorer scorer(spec, F);
  return monte_carlo(options, G, [&](double y) { return scorer(y); });
}

double div_by_subtraction(const LossSpec& spec, const DistPtr& F, const DistPtr& G) {
  return expected_loss_quadrature(spec, F, G) - expected_loss_quadrature(spec, G, G);
}

DivergenceValue div_monte_carlo(const LossSpec& spec, const DistPtr& F, const DistPtr& G,
                                const MonteCarloOptions& options) {
  const scoring::Scorer sf(spec, F);
  const scoring::Scorer sg(spec, G);
  return monte_carlo(options, G, [&](double y) { return sf(y) - sg(y); });
}

DivergenceValue div_difference_monte_carlo(const LossSpec& spec, const DistPtr& F1,
                                           const DistPtr& F2, const DistPtr& G,
                                           const MonteCarloOptions& options) {
  const scoring::Scorer s1(spec, F1);
  const scoring::Scorer s2(spec, F2);
  return monte_carlo(options, G, [&](double y) { return s1(y) - s2(y); });
}

double expfam_kl(const families::ExpFamDescriptor& desc, double eta_f, double eta_g) {
  return desc.bregman(eta_f, eta_g);
}

}  // namespace asymscore::divergence

// Copyright 2026 The fene-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fene/experiments.hpp"

#include "fene/diagnostics.hpp"
#include "fene/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace fene {

namespace {

// Number of steps of size <= dt covering the horizon exactly.
int steps_for(double horizon, double dt) {
  return std::max(1, static_cast<int>(std::ceil(horizon / dt - 1e-9)));
}

FluidState difference(const FluidState& a, const FluidState& b) {
  return FluidState{a.r - b.r, a.u - b.u, a.time};
}

double fluid_distance(const std::vector<FluidState>& a, const std::vector<FluidState>& b, int s,
                      double dt) {
  double sup = 0.0;
  double integral = 0.0;
  double previous = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const FluidState d = difference(a[k], b[k]);
    sup = std::max(sup, fluid_energy(d, s));
    const double h = sobolev_norm_sq(d.u, s + 1);
    if (k > 0) integral += 0.5 * dt * (previous + h);
    previous = h;
  }
  return std::sqrt(sup + integral);
}

}  // namespace

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("loglog_slope: need >= 2 points");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("loglog_slope: values must be positive");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

DifferenceResult stress_difference_experiment(const RunConfig& cfg) {
  const auto basis = build_basis(cfg);
  const FPOperator op(basis, cfg.model, cfg.effective_chi_index(), cfg.chi_mode);
  const CoupledConfig cc = make_coupled_config(cfg);
  const CoupledState init = initial_state(cfg, basis);
  const TorusGrid& grid = init.fluid.r.grid();
  const int n = steps_for(cfg.difference_horizon, cfg.dt);
  const double dt = cfg.difference_horizon / n;

  FluidStepConfig fcfg = cc.fluid;
  fcfg.dt = dt;
  FPStepConfig pcfg = cc.fp;
  pcfg.dt = dt;

  const SpectralField base_stress = stress_field(init.psi);
  const SpectralField stress_pattern = from_function(grid, kTensorComponents, [](int c, double x1, double x2) {
    switch (c) {
      case 0: return std::cos(x2);
      case 1: return std::sin(x1 + x2);
      default: return std::cos(x1);
    }
  });
  const SpectralField base_u = init.fluid.u;
  const SpectralField velocity_pattern = from_function(grid, 2, [](int c, double x1, double x2) {
    return c == 0 ? std::sin(x2) * std::cos(x1) : std::cos(x1 + x2);
  });

  auto fluid_run = [&](const SpectralField& stress) {
    std::vector<FluidState> out{init.fluid};
    FluidState f = init.fluid;
    for (int k = 0; k < n; ++k) {
      f = fluid_step(f, stress, cc.forcing, cc.model, fcfg);
      out.push_back(f);
    }
    return out;
  };
  auto fp_run = [&](const SpectralField& u) {
    PolymerTrajectory out{init.time, dt, {init.psi}};
    PolymerField p = init.psi;
    for (int k = 0; k < n; ++k) {
      p = fp_step(p, u, op, pcfg);
      out.samples.push_back(p);
    }
    return out;
  };

  const auto fluid_base = fluid_run(base_stress);
  const auto fp_base = fp_run(base_u);
  DifferenceResult res;
  for (double delta : cfg.deltas) {
    SpectralField stress = base_stress;
    stress.axpy(delta, stress_pattern);
    SpectralField u = base_u;
    u.axpy(delta, velocity_pattern);
    res.deltas.push_back(delta);
    res.fluid_distance.push_back(fluid_distance(fluid_run(stress), fluid_base, cfg.s_prime, dt));
    res.fp_distance.push_back(xs_distance(fp_run(u), fp_base, cfg.s_prime));
  }
  res.fluid_slope = loglog_slope(res.deltas, res.fluid_distance);
  res.fp_slope = loglog_slope(res.deltas, res.fp_distance);
  return res;
}

std::vector<ContractionRun> contraction_study(const RunConfig& cfg,
                                              const std::vector<double>& horizons) {
  const auto basis = build_basis(cfg);
  const FPOperator op(basis, cfg.model, cfg.effective_chi_index(), cfg.chi_mode);
  const CoupledState init = initial_state(cfg, basis);
  std::vector<ContractionRun> runs;
  for (double horizon : horizons) {
    ContractionRun run;
    run.horizon = horizon;
    run.n_steps = steps_for(horizon, cfg.dt);
    run.dt = horizon / run.n_steps;
    CoupledConfig cc = make_coupled_config(cfg);
    cc.fluid.dt = run.dt;
    cc.fp.dt = run.dt;

    std::vector<PolymerTrajectory> iterates{constant_trajectory(init.psi, run.dt, run.n_steps)};
    for (int k = 0; k < cfg.fp_max_iters; ++k) {
      iterates.push_back(fixed_point_map(iterates.back(), init, op, cc).psi);
      if (cfg.fp_stop_tol > 0.0 && iterates.size() >= 3 &&
          xs_distance(iterates.back(), iterates[iterates.size() - 2], cfg.s_prime) < cfg.fp_stop_tol) {
        break;
      }
    }
    run.report = contraction_factor(iterates, cfg.s_prime);
    const CoupledTrajectory mono = coupled_trajectory(init, op, cc, run.n_steps);
    run.monolithic_distance = xs_distance(iterates.back(), mono.psi, cfg.s_prime);
    runs.push_back(std::move(run));
  }
  return runs;
}

LemmaA1Result lemma_a1_experiment(const RunConfig& cfg) {
  if (cfg.ensemble < 100) throw DomainError("lemma_a1_experiment: ensemble must be >= 100");
  const auto basis = build_basis(cfg);
  const int nb = basis->size();
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<ConfDistribution> samples;
  samples.reserve(cfg.ensemble);
  for (int e = 0; e < cfg.ensemble; ++e) {
    ConfDistribution phi{Eigen::VectorXd(nb)};
    for (int i = 0; i < nb; ++i) phi.coeffs[i] = normal(rng) / (1.0 + basis->eigenvalue(i));
    samples.push_back(std::move(phi));
  }

  LemmaA1Result res;
  res.ensemble = cfg.ensemble;
  ConfDistribution pure{Eigen::VectorXd::Zero(nb)};
  pure.coeffs[0] = 1.0;
  const LemmaA1Terms pm = lemma_a1_check(pure, *basis, 1.0);
  res.pure_m_ratio = pm.lhs / pm.l2_term;
  res.pure_m_h1 = pm.h1_term;

  std::vector<double> deltas = cfg.lemma_deltas;
  std::sort(deltas.begin(), deltas.end(), std::greater<>());
  res.finite = true;
  for (double delta : deltas) {
    double c = -std::numeric_limits<double>::infinity();
    for (const auto& phi : samples) {
      const LemmaA1Terms t = lemma_a1_check(phi, *basis, delta);
      c = std::max(c, (t.lhs - t.h1_term) / t.l2_term);
    }
    res.deltas.push_back(delta);
    res.c_delta.push_back(c);
    res.finite = res.finite && std::isfinite(c);
  }
  res.monotone = std::is_sorted(res.c_delta.begin(), res.c_delta.end());
  return res;
}

}  // namespace fene

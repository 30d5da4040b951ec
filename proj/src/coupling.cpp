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

#include "fene/coupling.hpp"

#include "fene/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fene {

namespace {

struct Tendency {
  FluidTendency fluid;
  SpectralField psi;
};

Tendency coupled_rhs(const CoupledState& s, const FPOperator& op, const CoupledConfig& cfg) {
  const SpectralField stress = stress_field(s.psi);
  return Tendency{fluid_rhs(s.fluid, stress, cfg.forcing, cfg.model, cfg.fluid),
                  fp_rhs(s.psi, s.fluid.u, op, cfg.fp)};
}

// s += dt * k
void add_scaled(CoupledState& s, double dt, const Tendency& k) {
  s.fluid.r.axpy(dt, k.fluid.dr);
  s.fluid.u.axpy(dt, k.fluid.du);
  s.psi.coeffs.axpy(dt, k.psi);
}

// a = wa * a + wb * b
void blend(CoupledState& a, double wa, const CoupledState& b, double wb) {
  a.fluid.r *= wa;
  a.fluid.u *= wa;
  a.psi.coeffs *= wa;
  a.fluid.r.axpy(wb, b.fluid.r);
  a.fluid.u.axpy(wb, b.fluid.u);
  a.psi.coeffs.axpy(wb, b.psi.coeffs);
}

void set_time(CoupledState& s, double t) {
  s.time = t;
  s.fluid.time = t;
  s.psi.time = t;
}

// Index n and weight theta with t = t0 + (n + theta) dt, 0 <= n < N.
std::pair<std::size_t, double> locate(double t0, double dt, std::size_t n_samples, double t) {
  if (n_samples == 1) return {0, 0.0};
  const double x = (t - t0) / dt;
  const double last = static_cast<double>(n_samples - 1);
  if (x <= 0.0) return {0, 0.0};
  if (x >= last) return {n_samples - 2, 1.0};
  const double rounded = std::round(x);
  if (std::abs(x - rounded) < 1e-9) {
    const auto n = static_cast<std::size_t>(rounded);
    if (n == n_samples - 1) return {n - 1, 1.0};
    return {n, 0.0};
  }
  const auto n = static_cast<std::size_t>(std::floor(x));
  return {n, x - static_cast<double>(n)};
}

SpectralField lerp(const SpectralField& a, const SpectralField& b, double theta) {
  if (theta == 0.0) return a;
  if (theta == 1.0) return b;
  SpectralField out = a;
  out *= 1.0 - theta;
  out.axpy(theta, b);
  return out;
}

}  // namespace

double coupled_stability_bound(const CoupledState& state, const FPOperator& op,
                               const CoupledConfig& cfg) {
  FPStepConfig explicit_fp = cfg.fp;
  explicit_fp.scheme = FPScheme::kSsprk3Explicit;
  return std::min(fluid_cfl_bound(state.fluid, cfg.model, cfg.fluid),
                  fp_stability_bound(state.fluid.u, op, explicit_fp));
}

CoupledState coupled_step(const CoupledState& state, const FPOperator& op, const CoupledConfig& cfg) {
  const double dt = cfg.fluid.dt;
  if (!(dt > 0.0)) throw DomainError("coupled_step: dt must be > 0");
  if (cfg.fluid.check_cfl || cfg.fp.check_stability) {
    const double bound = coupled_stability_bound(state, op, cfg);
    if (dt > bound) {
      std::ostringstream msg;
      msg << "coupled_step: dt = " << dt << " exceeds the stability bound " << bound
          << " at t = " << state.time;
      throw StabilityViolation(msg.str());
    }
  }
  const double t0 = state.time;

  CoupledState s1 = state;
  add_scaled(s1, dt, coupled_rhs(state, op, cfg));
  set_time(s1, t0 + dt);

  CoupledState s2 = state;
  add_scaled(s1, dt, coupled_rhs(s1, op, cfg));
  blend(s2, 0.75, s1, 0.25);
  set_time(s2, t0 + 0.5 * dt);

  CoupledState out = state;
  add_scaled(s2, dt, coupled_rhs(s2, op, cfg));
  blend(out, 1.0 / 3.0, s2, 2.0 / 3.0);
  set_time(out, t0 + dt);

  check_positivity(out.fluid.r, out.time);
  return out;
}

double xs_norm(const PolymerTrajectory& traj, int s) {
  if (traj.samples.empty()) throw DomainError("xs_norm: empty trajectory");
  double sup = 0.0;
  double integral = 0.0;
  double previous = 0.0;
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    const FPEnergy e = fp_energy(traj.samples[k], s);
    sup = std::max(sup, e.l2m);
    if (k > 0) integral += 0.5 * traj.dt * (previous + e.h1m);
    previous = e.h1m;
  }
  return std::sqrt(sup + integral);
}

double xs_distance(const PolymerTrajectory& a, const PolymerTrajectory& b, int s) {
  if (a.samples.size() != b.samples.size()) {
    throw SizeMismatch("xs_distance: trajectories have different lengths");
  }
  PolymerTrajectory diff{a.t0, a.dt, {}};
  diff.samples.reserve(a.samples.size());
  for (std::size_t k = 0; k < a.samples.size(); ++k) {
    PolymerField d = a.samples[k];
    d.coeffs -= b.samples[k].coeffs;
    diff.samples.push_back(std::move(d));
  }
  return xs_norm(diff, s);
}

PolymerTrajectory constant_trajectory(const PolymerField& psi, double dt, int n_steps) {
  if (n_steps < 1 || !(dt > 0.0)) throw DomainError("constant_trajectory: need dt > 0 and n >= 1");
  PolymerTrajectory traj{psi.time, dt, {}};
  for (int k = 0; k <= n_steps; ++k) {
    PolymerField p = psi;
    p.time = psi.time + k * dt;
    traj.samples.push_back(std::move(p));
  }
  return traj;
}

StressProvider stress_provider(const PolymerTrajectory& traj) {
  auto stresses = std::make_shared<std::vector<SpectralField>>();
  for (const auto& p : traj.samples) stresses->push_back(stress_field(p));
  const double t0 = traj.t0;
  const double dt = traj.dt;
  return [stresses, t0, dt](double t) {
    const auto [n, theta] = locate(t0, dt, stresses->size(), t);
    if (theta == 0.0) return (*stresses)[n];
    return lerp((*stresses)[n], (*stresses)[n + 1], theta);
  };
}

VelocityProvider velocity_provider(const FluidTrajectory& traj) {
  auto velocities = std::make_shared<std::vector<SpectralField>>();
  for (const auto& f : traj.samples) velocities->push_back(f.u);
  const double t0 = traj.t0;
  const double dt = traj.dt;
  return [velocities, t0, dt](double t) {
    const auto [n, theta] = locate(t0, dt, velocities->size(), t);
    if (theta == 0.0) return (*velocities)[n];
    return lerp((*velocities)[n], (*velocities)[n + 1], theta);
  };
}

FixedPointImage fixed_point_map(const PolymerTrajectory& psi_tilde, const CoupledState& initial,
                                const FPOperator& op, const CoupledConfig& cfg) {
  if (psi_tilde.samples.size() < 2) throw DomainError("fixed_point_map: trajectory needs >= 2 samples");
  const int n_steps = static_cast<int>(psi_tilde.samples.size()) - 1;
  const double dt = psi_tilde.dt;

  FluidStepConfig fcfg = cfg.fluid;
  fcfg.dt = dt;
  const StressProvider stress = stress_provider(psi_tilde);
  FixedPointImage image;
  image.fluid = FluidTrajectory{initial.time, dt, {}};
  image.fluid.samples.reserve(n_steps + 1);
  FluidState fluid = initial.fluid;
  fluid.time = initial.time;
  image.fluid.samples.push_back(fluid);
  for (int k = 0; k < n_steps; ++k) {
    fluid = fluid_step(fluid, stress, cfg.forcing, cfg.model, fcfg);
    image.fluid.samples.push_back(fluid);
  }

  FPStepConfig pcfg = cfg.fp;
  pcfg.dt = dt;
  const VelocityProvider velocity = velocity_provider(image.fluid);
  image.psi = PolymerTrajectory{initial.time, dt, {}};
  image.psi.samples.reserve(n_steps + 1);
  PolymerField psi = initial.psi;
  psi.time = initial.time;
  image.psi.samples.push_back(psi);
  for (int k = 0; k < n_steps; ++k) {
    psi = fp_step(psi, velocity, op, pcfg);
    image.psi.samples.push_back(psi);
  }
  return image;
}

CoupledTrajectory coupled_trajectory(const CoupledState& initial, const FPOperator& op,
                                     const CoupledConfig& cfg, int n_steps) {
  CoupledTrajectory traj{PolymerTrajectory{initial.time, cfg.fluid.dt, {}},
                         FluidTrajectory{initial.time, cfg.fluid.dt, {}}};
  CoupledState s = initial;
  traj.psi.samples.push_back(s.psi);
  traj.fluid.samples.push_back(s.fluid);
  for (int k = 0; k < n_steps; ++k) {
    s = coupled_step(s, op, cfg);
    traj.psi.samples.push_back(s.psi);
    traj.fluid.samples.push_back(s.fluid);
  }
  return traj;
}

ContractionReport contraction_factor(const std::vector<PolymerTrajectory>& iterates, int s_prime,
                                     double rel_floor) {
  if (iterates.size() < 3) throw DomainError("contraction_factor: needs at least 3 iterates");
  ContractionReport report;
  report.floor = rel_floor * std::max(xs_norm(iterates.back(), s_prime), 1e-300);
  for (std::size_t k = 0; k + 1 < iterates.size(); ++k) {
    report.distances.push_back(xs_distance(iterates[k + 1], iterates[k], s_prime));
  }
  for (std::size_t k = 0; k < report.distances.size(); ++k) {
    if (report.distances[k] <= report.floor) {
      report.converged = true;
      break;
    }
    if (k + 1 < report.distances.size() && report.distances[k + 1] > report.floor) {
      report.ratios.push_back(report.distances[k + 1] / report.distances[k]);
    }
  }
  return report;
}

double blowup_indicator(const CoupledState& state) {
  const SpectralField div_t = stress_divergence(stress_field(state.psi));
  const GridValues v = backward(div_t);
  const int np = div_t.grid().size();
  double div_max = 0.0;
  for (int i = 0; i < np; ++i) {
    div_max = std::max(div_max, std::abs(v.values[i]) + std::abs(v.values[np + i]));
  }
  return sup_norm_w2inf(state.fluid.u) + div_max;
}

}  // namespace fene

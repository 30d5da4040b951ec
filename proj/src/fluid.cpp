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

#include "fene/fluid.hpp"

#include "fene/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fene {

namespace {

int galerkin_modes(const TorusGrid& g, const FluidStepConfig& cfg) {
  return cfg.n_modes < 0 ? g.dealias_cutoff() : cfg.n_modes;
}

void check_state(const FluidState& s) {
  if (s.r.components() != 1 || s.u.components() != 2) {
    throw SizeMismatch("fluid state: r must be scalar and u a 2-vector");
  }
  if (!(s.r.grid() == s.u.grid())) throw SizeMismatch("fluid state: grid mismatch");
}

SpectralField grid_to_field(GridValues& values, int cutoff) {
  SpectralField out = forward(values);
  truncate_in_place(out, cutoff);
  return out;
}

}  // namespace

SpectralField zero_stress(const TorusGrid& grid) { return SpectralField(grid, kTensorComponents); }

SpectralField constant_stress(const TorusGrid& grid, const Mat2& s) {
  SpectralField t(grid, kTensorComponents);
  t(0, 0, 0) = s(0, 0);
  t(1, 0, 0) = 0.5 * (s(0, 1) + s(1, 0));
  t(2, 0, 0) = s(1, 1);
  return t;
}

SpectralField stress_divergence(const SpectralField& stress) {
  if (stress.components() != kTensorComponents) {
    throw SizeMismatch("stress_divergence: expected a 3-component symmetric tensor");
  }
  const SpectralField t11 = stress.extract(0);
  const SpectralField t12 = stress.extract(1);
  const SpectralField t22 = stress.extract(2);
  SpectralField out(stress.grid(), 2);
  out.assign_component(0, derivative(t11, {1, 0}) + derivative(t12, {0, 1}));
  out.assign_component(1, derivative(t12, {1, 0}) + derivative(t22, {0, 1}));
  return out;
}

double phi_r(double y, double R) {
  if (!(R > 0.0)) throw DomainError("phi_r: requires R > 0");
  if (y <= R) return 1.0;
  if (y >= R + 1.0) return 0.0;
  const double s = y - R;
  return 1.0 - s * s * (3.0 - 2.0 * s);
}

double phi_r_derivative(double y, double R) {
  if (!(R > 0.0)) throw DomainError("phi_r: requires R > 0");
  if (y <= R || y >= R + 1.0) return 0.0;
  const double s = y - R;
  return -6.0 * s * (1.0 - s);
}

double cutoff_factor(const SpectralField& u, const FluidStepConfig& cfg) {
  if (!cfg.cutoff_R) return 1.0;
  return phi_r(sup_norm_w2inf(u), *cfg.cutoff_R);
}

SpectralField forcing_field(const TorusGrid& grid, const ForcingSpec& f, double t) {
  if (f.kind == ForcingSpec::Kind::kZero) return SpectralField(grid, 2);
  return from_function(grid, 2, [&](int c, double x1, double x2) {
    return f.evaluate(t, Vec2(x1, x2))(c);
  });
}

FluidTendency fluid_rhs(const FluidState& state, const SpectralField& stress, const ForcingSpec& f,
                        const ModelParams& p, const FluidStepConfig& cfg) {
  check_state(state);
  if (stress.components() != kTensorComponents || !(stress.grid() == state.u.grid())) {
    throw SizeMismatch("fluid_rhs: stress must be a 3-component tensor on the fluid grid");
  }
  const TorusGrid& grid = state.u.grid();
  const int K = grid.dealias_cutoff();
  const int nm = galerkin_modes(grid, cfg);
  const int np = grid.size();
  const double cut = cutoff_factor(state.u, cfg);

  const SpectralField ut = truncate(state.u, K);
  const SpectralField rt = truncate(state.r, K);
  const SpectralField u1 = ut.extract(0);
  const SpectralField u2 = ut.extract(1);

  // Pointwise D(r), truncated before it enters a product.
  GridValues dgrid = backward(rt);
  for (double& v : dgrid.values) {
    if (!(v > 0.0)) {
      std::ostringstream msg;
      msg << "fluid_rhs: r <= 0 on the grid (min sample " << v << ") at t = " << state.time;
      throw PositivityLoss(msg.str());
    }
    v = d_coefficient(v, p);
  }
  const GridValues dvals = backward(grid_to_field(dgrid, K));

  const SpectralField div_u = derivative(u1, {1, 0}) + derivative(u2, {0, 1});
  SpectralField visc = p.mu_s * laplacian(ut);
  if (p.mu_b != 0.0) {
    SpectralField grad_div(grid, 2);
    grad_div.assign_component(0, derivative(div_u, {1, 0}));
    grad_div.assign_component(1, derivative(div_u, {0, 1}));
    visc.axpy(p.mu_b, grad_div);
  }
  visc += stress_divergence(truncate(stress, K));
  const GridValues force_div = backward(visc);

  GridValues du_out(grid, 2);
  GridValues dr_out(grid, 1);
  for (int i = 0; i < np; ++i) {
    const double d = dvals.values[i];
    du_out.values[i] = cut * d * force_div.component(0)[i];
    du_out.values[np + i] = cut * d * force_div.component(1)[i];
  }

  if (!cfg.viscous_only) {
    const GridValues uv = backward(ut);
    const GridValues rv = backward(rt);
    const GridValues u1x = backward(derivative(u1, {1, 0}));
    const GridValues u1y = backward(derivative(u1, {0, 1}));
    const GridValues u2x = backward(derivative(u2, {1, 0}));
    const GridValues u2y = backward(derivative(u2, {0, 1}));
    const GridValues rx = backward(derivative(rt, {1, 0}));
    const GridValues ry = backward(derivative(rt, {0, 1}));
    const double half_gm1 = 0.5 * (p.gamma - 1.0);
    for (int i = 0; i < np; ++i) {
      const double a1 = uv.values[i];
      const double a2 = uv.values[np + i];
      const double r = rv.values[i];
      const double divu = u1x.values[i] + u2y.values[i];
      dr_out.values[i] = -cut * (a1 * rx.values[i] + a2 * ry.values[i] + half_gm1 * r * divu);
      du_out.values[i] -= cut * (a1 * u1x.values[i] + a2 * u1y.values[i] + r * rx.values[i]);
      du_out.values[np + i] -= cut * (a1 * u2x.values[i] + a2 * u2y.values[i] + r * ry.values[i]);
    }
  }

  FluidTendency out{grid_to_field(dr_out, K), grid_to_field(du_out, K)};
  out.du += forcing_field(grid, f, state.time);
  if (nm < grid.n() / 2) {
    truncate_in_place(out.dr, nm);
    truncate_in_place(out.du, nm);
  }
  return out;
}

SpectralField continuity_rhs(const FluidState& state, const ModelParams& p,
                             const FluidStepConfig& cfg) {
  return fluid_rhs(state, zero_stress(state.u.grid()), ForcingSpec{}, p, cfg).dr;
}

SpectralField momentum_rhs(const FluidState& state, const SpectralField& stress,
                           const ForcingSpec& f, const ModelParams& p, const FluidStepConfig& cfg) {
  return fluid_rhs(state, stress, f, p, cfg).du;
}

double fluid_cfl_bound(const FluidState& state, const ModelParams& p, const FluidStepConfig& cfg) {
  check_state(state);
  const TorusGrid& grid = state.u.grid();
  const GridValues uv = backward(state.u);
  const GridValues rv = backward(state.r);
  const int np = grid.size();
  double umax = 0.0;
  double cmax = 0.0;
  double dmax = 0.0;
  const double sound = std::sqrt(0.5 * (p.gamma - 1.0));
  for (int i = 0; i < np; ++i) {
    umax = std::max(umax, std::hypot(uv.values[i], uv.values[np + i]));
    const double r = rv.values[i];
    if (r > 0.0) {
      cmax = std::max(cmax, sound * r);
      dmax = std::max(dmax, d_coefficient(r, p));
    }
  }
  const double h = grid.spacing();
  const double adv = cfg.viscous_only ? h / std::max(umax, 1e-300) : h / std::max(umax + cmax, 1e-300);
  const double visc = h * h / (4.0 * std::max(dmax * (p.mu_s + p.mu_b), 1e-300));
  return cfg.cfl * std::min(adv, visc);
}

void check_positivity(const SpectralField& r, double time) {
  const double rmin = grid_min(r);
  if (!(rmin > 0.0)) {
    std::ostringstream msg;
    msg << "positivity lost: min r = " << rmin << " at t = " << time;
    throw PositivityLoss(msg.str());
  }
}

FluidState fluid_step(const FluidState& state, const StressProvider& stress, const ForcingSpec& f,
                      const ModelParams& p, const FluidStepConfig& cfg) {
  check_state(state);
  if (!(cfg.dt > 0.0)) throw DomainError("fluid_step: dt must be > 0");
  if (cfg.check_cfl) {
    const double bound = fluid_cfl_bound(state, p, cfg);
    if (cfg.dt > bound) {
      std::ostringstream msg;
      msg << "fluid_step: dt = " << cfg.dt << " exceeds the CFL bound " << bound;
      throw StabilityViolation(msg.str());
    }
  }
  const double dt = cfg.dt;
  const double t0 = state.time;

  FluidTendency k = fluid_rhs(state, stress(t0), f, p, cfg);
  FluidState s1{state.r, state.u, t0 + dt};
  s1.r.axpy(dt, k.dr);
  s1.u.axpy(dt, k.du);

  k = fluid_rhs(s1, stress(t0 + dt), f, p, cfg);
  FluidState s2{0.75 * state.r, 0.75 * state.u, t0 + 0.5 * dt};
  s1.r.axpy(dt, k.dr);
  s1.u.axpy(dt, k.du);
  s2.r.axpy(0.25, s1.r);
  s2.u.axpy(0.25, s1.u);

  k = fluid_rhs(s2, stress(t0 + 0.5 * dt), f, p, cfg);
  s2.r.axpy(dt, k.dr);
  s2.u.axpy(dt, k.du);
  FluidState out{(1.0 / 3.0) * state.r, (1.0 / 3.0) * state.u, t0 + dt};
  out.r.axpy(2.0 / 3.0, s2.r);
  out.u.axpy(2.0 / 3.0, s2.u);

  check_positivity(out.r, out.time);
  return out;
}

FluidState fluid_step(const FluidState& state, const SpectralField& stress, const ForcingSpec& f,
                      const ModelParams& p, const FluidStepConfig& cfg) {
  return fluid_step(state, StressProvider([&stress](double) { return stress; }), f, p, cfg);
}

Envelope max_principle_envelope(double inf_r0, double sup_r0, double grad_u_integral,
                                double gamma) {
  if (!(inf_r0 > 0.0) || sup_r0 < inf_r0) {
    throw DomainError("max_principle_envelope: requires 0 < inf r0 <= sup r0");
  }
  if (grad_u_integral < 0.0) throw DomainError("max_principle_envelope: negative integral");
  const double c = std::max(1.0, 0.5 * (gamma - 1.0));
  return Envelope{inf_r0 * std::exp(-c * grad_u_integral), sup_r0 * std::exp(c * grad_u_integral)};
}

Envelope max_principle_envelope(const SpectralField& r0, double grad_u_integral, double gamma) {
  return max_principle_envelope(grid_min(r0), grid_max(r0), grad_u_integral, gamma);
}

double fluid_energy(const FluidState& state, int s) {
  return sobolev_norm_sq(state.r, s) + sobolev_norm_sq(state.u, s);
}

double total_mass(const FluidState& state, const ModelParams& p) {
  const GridValues rv = backward(state.r);
  double sum = 0.0;
  for (double r : rv.values) sum += r_to_density(r, p);
  const double cell = state.r.grid().spacing() * state.r.grid().spacing();
  return sum * cell;
}

Vec2 total_momentum(const FluidState& state, const ModelParams& p) {
  const GridValues rv = backward(state.r);
  const GridValues uv = backward(state.u);
  const int np = state.r.grid().size();
  Vec2 sum = Vec2::Zero();
  for (int i = 0; i < np; ++i) {
    const double rho = r_to_density(rv.values[i], p);
    sum.x() += rho * uv.values[i];
    sum.y() += rho * uv.values[np + i];
  }
  const double cell = state.r.grid().spacing() * state.r.grid().spacing();
  return sum * cell;
}

FluidState make_fluid_state(const TorusGrid& grid, const ModelParams& p,
                            const std::function<double(double, double)>& rho,
                            const std::function<Vec2(double, double)>& u) {
  FluidState s{from_function(grid, 1,
                             [&](int, double x1, double x2) { return density_to_r(rho(x1, x2), p); }),
               from_function(grid, 2, [&](int c, double x1, double x2) { return u(x1, x2)(c); }),
               0.0};
  return s;
}

}  // namespace fene

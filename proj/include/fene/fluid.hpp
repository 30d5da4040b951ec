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

// Fourier-Galerkin solver for the (r, u) system
//
//   r_t = -phi_R [u.grad r + (gamma-1)/2 r div u]
//   u_t = -phi_R [u.grad u + r grad r] + phi_R D(r) [div S(grad u) + div T] + f
//
// where phi_R is evaluated at the grid-sampled W^{2,inf} norm of u. Products
// follow the 2/3 rule; D(r) is formed pointwise from the truncated r and
// truncated again before it multiplies the stress divergence.

#ifndef FENE_FLUID_HPP
#define FENE_FLUID_HPP

#include "fene/model.hpp"
#include "fene/spectral.hpp"

#include <functional>
#include <optional>

namespace fene {

struct FluidState {
  SpectralField r;  // scalar
  SpectralField u;  // two components
  double time = 0.0;

  friend bool operator==(const FluidState&, const FluidState&) = default;
};

/// Symmetric tensor field stored as three components (11, 12, 22).
inline constexpr int kTensorComponents = 3;
SpectralField zero_stress(const TorusGrid& grid);
/// Constant tensor field equal to s everywhere.
SpectralField constant_stress(const TorusGrid& grid, const Mat2& s);
/// (d_1 T_11 + d_2 T_12, d_1 T_12 + d_2 T_22).
SpectralField stress_divergence(const SpectralField& stress);

struct FluidStepConfig {
  double dt = 1e-3;
  std::optional<double> cutoff_R;  // phi_R disabled when empty
  int n_modes = -1;                // Galerkin dimension of P_n; < 0 means n/3
  double cfl = 1.0;
  bool check_cfl = true;
  // Unit-test mode: r frozen, no advection or pressure.
  bool viscous_only = false;
};

/// C^1 cubic blend: 1 on [0, R], 0 on [R+1, inf).
double phi_r(double y, double R);
double phi_r_derivative(double y, double R);

/// phi_R(|u|_{2,inf}), or 1 without a cut-off.
double cutoff_factor(const SpectralField& u, const FluidStepConfig& cfg);

SpectralField continuity_rhs(const FluidState& state, const ModelParams& p,
                             const FluidStepConfig& cfg);
SpectralField momentum_rhs(const FluidState& state, const SpectralField& stress,
                           const ForcingSpec& f, const ModelParams& p,
                           const FluidStepConfig& cfg);

/// Both tendencies sharing the transforms of one evaluation.
struct FluidTendency {
  SpectralField dr;
  SpectralField du;
};
FluidTendency fluid_rhs(const FluidState& state, const SpectralField& stress,
                        const ForcingSpec& f, const ModelParams& p, const FluidStepConfig& cfg);

/// cfl * min(h / (max|u| + c_s), h^2 / (4 max D (mu_s + mu_b))), c_s the sound speed.
double fluid_cfl_bound(const FluidState& state, const ModelParams& p, const FluidStepConfig& cfg);

/// Stress as a function of time; lets callers feed a trajectory.
using StressProvider = std::function<SpectralField(double)>;

/// One SSP-RK3 step. Throws StabilityViolation when dt exceeds the bound and
/// PositivityLoss when min r <= 0 afterwards.
FluidState fluid_step(const FluidState& state, const StressProvider& stress, const ForcingSpec& f,
                      const ModelParams& p, const FluidStepConfig& cfg);
FluidState fluid_step(const FluidState& state, const SpectralField& stress, const ForcingSpec& f,
                      const ModelParams& p, const FluidStepConfig& cfg);

/// Throws PositivityLoss if min r <= 0 on the grid.
void check_positivity(const SpectralField& r, double time);

struct Envelope {
  double lower;
  double upper;
};
/// [inf r0 e^{-c I}, sup r0 e^{c I}], c = max(1, (gamma-1)/2), I = int |grad u|_inf dt.
Envelope max_principle_envelope(double inf_r0, double sup_r0, double grad_u_integral,
                                double gamma);
Envelope max_principle_envelope(const SpectralField& r0, double grad_u_integral, double gamma);

/// |r|_{W^{s,2}}^2 + |u|_{W^{s,2}}^2.
double fluid_energy(const FluidState& state, int s);

/// int rho dx and int rho u dx with rho = rho(r) sampled on the grid.
double total_mass(const FluidState& state, const ModelParams& p);
Vec2 total_momentum(const FluidState& state, const ModelParams& p);

/// Forcing sampled on the grid and transformed; zero field for kZero.
SpectralField forcing_field(const TorusGrid& grid, const ForcingSpec& f, double t);

/// Builds (r, u) from rho and u given as functions of x.
FluidState make_fluid_state(const TorusGrid& grid, const ModelParams& p,
                            const std::function<double(double, double)>& rho,
                            const std::function<Vec2(double, double)>& u);

}  // namespace fene

#endif  // FENE_FLUID_HPP

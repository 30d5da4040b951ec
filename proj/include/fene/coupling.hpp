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

// Coupling of the fluid and Fokker-Planck solvers: the monolithic SSP-RK3
// integrator, the stress -> fluid -> polymer map on trajectories, the X^s
// trajectory norms used to measure its contraction, and the blow-up monitor.

#ifndef FENE_COUPLING_HPP
#define FENE_COUPLING_HPP

#include "fene/fluid.hpp"
#include "fene/fokker_planck.hpp"

#include <memory>
#include <vector>

namespace fene {

struct CoupledState {
  FluidState fluid;
  PolymerField psi;
  double time = 0.0;

  friend bool operator==(const CoupledState&, const CoupledState&) = default;
};

struct CoupledConfig {
  ModelParams model;
  ForcingSpec forcing;
  FluidStepConfig fluid;  // fluid.dt is the common step
  FPStepConfig fp;        // epsilon and the scheme used by the decoupled FP solves
};

/// One monolithic SSP-RK3 step; the stress is re-evaluated from psi at every
/// stage. Throws StabilityViolation / PositivityLoss like the sub-solvers.
CoupledState coupled_step(const CoupledState& state, const FPOperator& op, const CoupledConfig& cfg);

/// Largest dt admitted by both solvers (FP bound for the explicit scheme).
double coupled_stability_bound(const CoupledState& state, const FPOperator& op,
                               const CoupledConfig& cfg);

/// Samples at t0 + k dt, k = 0..N.
struct PolymerTrajectory {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<PolymerField> samples;
};
struct FluidTrajectory {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<FluidState> samples;
};

/// sqrt(max_t l2m part + trapezoid int h1m part) with parts from fp_energy(., s).
double xs_norm(const PolymerTrajectory& traj, int s);
/// xs_norm of the sample-wise difference.
double xs_distance(const PolymerTrajectory& a, const PolymerTrajectory& b, int s);

/// Constant-in-time extension of psi over n_steps steps of size dt.
PolymerTrajectory constant_trajectory(const PolymerField& psi, double dt, int n_steps);

/// Linear interpolation of the stress / velocity of a trajectory.
StressProvider stress_provider(const PolymerTrajectory& traj);
VelocityProvider velocity_provider(const FluidTrajectory& traj);

struct FixedPointImage {
  PolymerTrajectory psi;
  FluidTrajectory fluid;
};

/// psi_tilde -> T(psi_tilde) -> (r, u) -> psi over the horizon of psi_tilde.
FixedPointImage fixed_point_map(const PolymerTrajectory& psi_tilde, const CoupledState& initial,
                                const FPOperator& op, const CoupledConfig& cfg);

/// Trajectory of the monolithic integrator over n_steps.
struct CoupledTrajectory {
  PolymerTrajectory psi;
  FluidTrajectory fluid;
};
CoupledTrajectory coupled_trajectory(const CoupledState& initial, const FPOperator& op,
                                     const CoupledConfig& cfg, int n_steps);

struct ContractionReport {
  std::vector<double> distances;  // d_k = |psi^{k+1} - psi^k|_{X^{s'}}
  std::vector<double> ratios;     // d_{k+1} / d_k while both are above the floor
  bool converged = false;         // some d_k fell below the rounding floor
  double floor = 0.0;
};
/// Distances below rel_floor * |last iterate|_{X^{s'}} count as converged.
ContractionReport contraction_factor(const std::vector<PolymerTrajectory>& iterates, int s_prime,
                                     double rel_floor = 1e-13);

/// |u|_{W^{2,inf}} + |div_x T(psi)|_{L^inf}, both grid sampled.
double blowup_indicator(const CoupledState& state);

}  // namespace fene

#endif  // FENE_COUPLING_HPP

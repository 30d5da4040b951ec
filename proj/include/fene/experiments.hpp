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

// Numerical experiments run by the stress_difference, contraction_study and
// lemma_a1 scenarios.

#ifndef FENE_EXPERIMENTS_HPP
#define FENE_EXPERIMENTS_HPP

#include "fene/coupling.hpp"
#include "fene/run_config.hpp"

#include <vector>

namespace fene {

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct DifferenceResult {
  std::vector<double> deltas;
  std::vector<double> fluid_distance;  // stress perturbation -> (r, u)
  std::vector<double> fp_distance;     // velocity perturbation -> psi
  double fluid_slope = 0.0;
  double fp_slope = 0.0;
};
/// Perturbs the stress fed to the fluid solver and the velocity fed to the FP
/// solver by delta times a fixed smooth pattern over cfg.difference_horizon.
/// Fluid distance: sqrt(sup |d(r,u)|_{s'}^2 + int |du|_{s'+1}^2); FP distance
/// is the X^{s'} distance.
DifferenceResult stress_difference_experiment(const RunConfig& cfg);

struct ContractionRun {
  double horizon = 0.0;
  int n_steps = 0;
  double dt = 0.0;
  ContractionReport report;
  double monolithic_distance = 0.0;  // last iterate vs monolithic, X^{s'}
};
/// Iterates fixed_point_map fp_max_iters times from the constant extension of
/// psi_0 for each horizon in `horizons` (step size at most cfg.dt).
std::vector<ContractionRun> contraction_study(const RunConfig& cfg,
                                              const std::vector<double>& horizons);

struct LemmaA1Result {
  std::vector<double> deltas;
  std::vector<double> c_delta;
  double pure_m_ratio = 0.0;  // LHS / L2 term for psi = M
  double pure_m_h1 = 0.0;     // H1 term for psi = M
  bool finite = false;
  bool monotone = false;      // c_delta grows as delta shrinks
  int ensemble = 0;
};
/// Random smooth psi/M in span(basis), seeded by cfg.seed.
LemmaA1Result lemma_a1_experiment(const RunConfig& cfg);

}  // namespace fene

#endif  // FENE_EXPERIMENTS_HPP

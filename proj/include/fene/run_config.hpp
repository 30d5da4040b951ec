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

// Run configuration: flat "section.key = value" text, '#' starts a comment.
// Unknown keys, duplicate keys and malformed values are rejected with the
// offending line and key.

#ifndef FENE_RUN_CONFIG_HPP
#define FENE_RUN_CONFIG_HPP

#include "fene/fokker_planck.hpp"
#include "fene/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fene {

enum class Scenario {
  kEquilibrium,
  kShearPerturbation,
  kDensityBump,
  kStressDifference,
  kContractionStudy,
  kLemmaA1,
};

std::string_view scenario_name(Scenario s);

struct RunConfig {
  ModelParams model;
  ForcingSpec forcing;

  int grid_n = 32;

  int n_radial = 32;
  int n_angular = 32;
  int n_basis = 40;
  int chi_index = 0;  // 0: use n_radial
  ChiMode chi_mode = ChiMode::kBoth;

  std::optional<double> cutoff_R;
  int n_modes = -1;  // -1: n/3
  double cfl = 1.0;

  FPScheme fp_scheme = FPScheme::kImexEuler;

  double dt = 0.004;
  std::int64_t steps = 100;
  std::int64_t max_steps = -1;  // stop early (and checkpoint) after this many steps
  int series_every = 1;
  int snapshot_every = 0;
  int s = 4;
  int s_prime = 3;
  double ceiling = 1e3;
  std::uint64_t seed = 0;
  std::string output_dir = "fene-run";

  Scenario scenario = Scenario::kEquilibrium;
  double amplitude = 0.1;  // velocity / density perturbation
  double rho0 = 1.0;
  int psi_mode = 3;
  double psi_amplitude = 0.0;
  int psi_wave1 = 1;
  int psi_wave2 = 0;
  double psi_noise = 0.0;  // seeded random low-mode perturbation of psi
  std::vector<double> deltas{1e-4, 1e-3, 1e-2};
  double difference_horizon = 0.1;
  int ensemble = 200;
  std::vector<double> lemma_deltas{1.0, 0.1, 0.01};

  double fp_horizon = 0.05;
  int fp_max_iters = 5;
  double fp_stop_tol = 0.0;
  std::vector<double> fp_horizons{0.1, 0.05, 0.025};

  int effective_chi_index() const { return chi_index > 0 ? chi_index : n_radial; }
};

RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::string& path);

/// Sets one key from its textual value (same rules as the parser).
void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value);
/// Canonical textual value of one key.
std::string get_config_value(const RunConfig& cfg, std::string_view key);
/// All keys in canonical order.
const std::vector<std::string>& config_keys();

/// Throws ConfigError (with the key as field) on the first violated constraint.
void validate_run_config(const RunConfig& cfg);

/// Canonical "key = value" text of every key; parse_run_config round-trips it.
std::string serialize_run_config(const RunConfig& cfg);

}  // namespace fene

#endif  // FENE_RUN_CONFIG_HPP

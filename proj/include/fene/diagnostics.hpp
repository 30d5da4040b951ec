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

// Run orchestration: scenario set-up, the monitored time series, run
// directories (series.csv, manifest.json, snapshots/*.fkp, checkpoint.fkp)
// and the post-run report.

#ifndef FENE_DIAGNOSTICS_HPP
#define FENE_DIAGNOSTICS_HPP

#include "fene/checkpoint.hpp"
#include "fene/coupling.hpp"
#include "fene/error.hpp"
#include "fene/run_config.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fene {

std::shared_ptr<const ConfigBasis> build_basis(const RunConfig& cfg);
CoupledConfig make_coupled_config(const RunConfig& cfg);
/// Initial (rho, u, psi) of the configured scenario; psi noise uses cfg.seed.
CoupledState initial_state(const RunConfig& cfg, std::shared_ptr<const ConfigBasis> basis);

/// Running quantities that cannot be recomputed from the current state alone.
struct MonitorState {
  double mass0 = 0.0;
  double momentum0[2] = {0.0, 0.0};
  double momentum_scale = 0.0;  // sum_i int rho |u_i| dx at t = 0
  double polymer_mass0 = 0.0;
  double inf_r0 = 0.0;
  double sup_r0 = 0.0;
  double grad_u_integral = 0.0;     // int |grad u|_inf dt
  double u_sobolev_integral = 0.0;  // int |u|_{s+1}^2 dt
  double source_integral = 0.0;     // int (|f|_s^2 + |T|_s^2) dt
  double last_grad_u = 0.0;
  double last_u_sobolev = 0.0;
  double last_source = 0.0;

  std::vector<double> pack() const;
  static MonitorState unpack(const std::vector<double>& v);
};

struct SeriesRecord {
  std::uint64_t step = 0;
  double time = 0.0;
  double mass = 0.0;
  double momentum[2] = {0.0, 0.0};
  double polymer_mass = 0.0;
  std::vector<double> fluid_energy;  // s = 0..s_max
  double fp_l2m = 0.0;
  double fp_h1m = 0.0;
  double min_r = 0.0;
  double min_psi_sample = 0.0;
  double blowup_indicator = 0.0;
  bool cutoff_active = false;
  double max_r = 0.0;
  double envelope_lower = 0.0;
  double envelope_upper = 0.0;
  double grad_u_integral = 0.0;
  double u_sobolev_integral = 0.0;
  double source_integral = 0.0;
};

std::vector<std::string> series_header(int s_max);
std::string format_series_row(const SeriesRecord& rec);

class Simulation {
 public:
  explicit Simulation(const RunConfig& cfg);
  /// Continues from a checkpoint written by save().
  Simulation(const RunConfig& cfg, const Checkpoint& ckpt);

  const RunConfig& config() const { return cfg_; }
  const CoupledState& state() const { return state_; }
  const FPOperator& op() const { return *op_; }
  const CoupledConfig& coupled_config() const { return ccfg_; }
  const MonitorState& monitors() const { return mon_; }
  std::uint64_t steps_done() const { return step_; }

  /// One monolithic coupled step plus the monitor update.
  void step();
  SeriesRecord record() const;
  void save(const std::string& path) const;

 private:
  void init_monitors();
  void sample_rates(double& grad_u, double& u_sob, double& source) const;

  RunConfig cfg_;
  std::shared_ptr<const ConfigBasis> basis_;
  std::unique_ptr<FPOperator> op_;
  CoupledConfig ccfg_;
  CoupledState state_;
  MonitorState mon_;
  std::uint64_t step_ = 0;
};

struct RunOutcome {
  ErrorCode code = ErrorCode::kOk;
  std::string status;  // "completed", "stopped" (max_steps) or the error name
  std::string message;
  std::string output_dir;
};

/// Executes the scenario and writes the run directory. Solver failures end up
/// in the outcome and the manifest; I/O failures throw IoError.
/// `input_text` is the raw config as read (hashed into the manifest).
RunOutcome run(const RunConfig& cfg, const std::string& input_text = {});
/// Continues a time-stepping run from a checkpoint into cfg.output_dir.
RunOutcome resume(const RunConfig& cfg, const std::string& checkpoint_path,
                  const std::string& input_text = {});

/// Human-readable summary of a run directory.
std::string report(const std::string& run_dir);

/// Constants of the energy-shape checks fitted on a series.
struct EnergyFit {
  /// Smallest c with log fp_l2m - c int |u|_{s+1}^2 nonincreasing (inf if none).
  double fp_c = 0.0;
  /// max_t [sup E_s + int |u|_{s+1}^2] / [E_s(0) + int (|f|_s^2 + |T|_s^2)].
  double fluid_c = 0.0;
};
EnergyFit fit_energy(const std::vector<SeriesRecord>& series);
std::vector<SeriesRecord> read_series(const std::string& csv_path);

/// Git blob hash ("blob <len>\0" + text) in hex.
std::string git_blob_sha1(const std::string& text);

}  // namespace fene

#endif  // FENE_DIAGNOSTICS_HPP

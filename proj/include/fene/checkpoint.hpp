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

// Binary snapshots (.fkp). Layout, all little endian:
//
//   "FKPD"  u32 version
//   i32 grid_n, n_basis, n_radial, n_angular, radial_dim, chi_index, chi_mode
//   f64 b
//   u64 step
//   f64 state time, fluid time, psi time, psi initial mass
//   u64 monitor count, f64 monitors[count]
//   f64 r[n*n*2], u[2*n*n*2], psi[n_basis*n*n*2]   (re, im interleaved)
//
// Coefficient blocks follow the SpectralField storage order
// (component, j1, j2). Files are written to a temporary name and renamed.

#ifndef FENE_CHECKPOINT_HPP
#define FENE_CHECKPOINT_HPP

#include "fene/coupling.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace fene {

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct CheckpointHeader {
  std::uint32_t version = kCheckpointVersion;
  int grid_n = 0;
  int n_basis = 0;
  int n_radial = 0;
  int n_angular = 0;
  int radial_dim = 0;
  int chi_index = 0;
  int chi_mode = 0;
  double b = 0.0;
  std::uint64_t step = 0;
};

/// Everything in a .fkp file; psi coefficients are kept without a basis.
struct Checkpoint {
  CheckpointHeader header;
  double time = 0.0;
  FluidState fluid;
  SpectralField psi_coeffs;
  double psi_time = 0.0;
  double psi_initial_mass = 0.0;
  std::vector<double> monitors;
};

void save_checkpoint(const std::string& path, const CoupledState& state, const FPOperator& op,
                     std::uint64_t step, const std::vector<double>& monitors = {});

/// Throws IoError (missing or truncated file) or VersionError (magic/version).
Checkpoint read_checkpoint(const std::string& path);

/// Rebuilds the coupled state on `basis`; throws VersionError if the basis
/// does not match the one the file was written with.
CoupledState restore_state(const Checkpoint& ckpt, std::shared_ptr<const ConfigBasis> basis);

/// read_checkpoint + restore_state.
CoupledState load_checkpoint(const std::string& path, std::shared_ptr<const ConfigBasis> basis);

}  // namespace fene

#endif  // FENE_CHECKPOINT_HPP

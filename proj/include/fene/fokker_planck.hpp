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

// Fokker-Planck solver in weak-in-q form. With psi = M sum_i c_i(x) phi_i(q)
// and test functions phi_i the coefficients obey
//
//   d_t c_i = -div_x(u (C c)_i) + eps Lap c_i
//             + sum_{a,b} d_b u_a (G^{ab} c)_i - kappa lambda_i c_i,
//
// C_ij = int M chi phi_i phi_j,  G^{ab}_ij = int M chi q_b d_a phi_i phi_j,
// kappa = A11 / (4 lambda). The matrices are built once per basis and cut-off.

#ifndef FENE_FOKKER_PLANCK_HPP
#define FENE_FOKKER_PLANCK_HPP

#include "fene/config_space.hpp"
#include "fene/model.hpp"
#include "fene/spectral.hpp"

#include <Eigen/Core>

#include <array>
#include <functional>
#include <memory>

namespace fene {

/// Where the chi_n cut-off enters the weak form.
enum class ChiMode { kBoth, kDriftOnly, kOff };

/// psi/M expanded in a ConfigBasis; one scalar torus field per basis index,
/// stored as the components of a single SpectralField.
struct PolymerField {
  std::shared_ptr<const ConfigBasis> basis;
  SpectralField coeffs;
  double time = 0.0;
  double initial_mass = 0.0;

  int n_basis() const { return coeffs.components(); }
  const TorusGrid& grid() const { return coeffs.grid(); }

  friend bool operator==(const PolymerField& a, const PolymerField& b) {
    return a.basis == b.basis && a.coeffs == b.coeffs && a.time == b.time &&
           a.initial_mass == b.initial_mass;
  }
};

/// psi = M everywhere.
PolymerField equilibrium_polymer(const TorusGrid& grid, std::shared_ptr<const ConfigBasis> basis);
/// psi = M (1 + sum_i f_i(x) phi_i) for the given (index, f) terms.
PolymerField make_polymer(const TorusGrid& grid, std::shared_ptr<const ConfigBasis> basis,
                          const std::function<double(int, double, double)>& coeff_of_x);

/// int int psi dq dx.
double polymer_mass(const PolymerField& psi);
/// eta(x) = int psi dq as a scalar field.
SpectralField marginal_density(const PolymerField& psi);

class FPOperator {
 public:
  FPOperator(std::shared_ptr<const ConfigBasis> basis, const ModelParams& p, int chi_index,
             ChiMode chi_mode = ChiMode::kBoth);

  const ConfigBasis& basis() const { return *basis_; }
  std::shared_ptr<const ConfigBasis> basis_ptr() const { return basis_; }
  int size() const { return basis_->size(); }
  double relaxation_rate() const { return kappa_; }
  int chi_index() const { return chi_index_; }
  ChiMode chi_mode() const { return chi_mode_; }

  /// C (identity when chi is not applied to transport).
  const Eigen::MatrixXd& transport_matrix() const { return transport_; }
  /// G^{ab}, a, b in {0, 1}.
  const Eigen::MatrixXd& drift_matrix(int a, int b) const { return drift_[2 * a + b]; }
  /// [G^{00} G^{01} G^{10} G^{11}]
  const Eigen::MatrixXd& stacked_drift() const { return stacked_; }
  /// max_{ab} |G^{ab}|_2
  double drift_norm() const { return drift_norm_; }
  /// kappa lambda_i
  const Eigen::VectorXd& relaxation() const { return relax_; }

 private:
  std::shared_ptr<const ConfigBasis> basis_;
  double kappa_;
  int chi_index_;
  ChiMode chi_mode_;
  Eigen::MatrixXd transport_;
  std::array<Eigen::MatrixXd, 4> drift_;
  Eigen::MatrixXd stacked_;
  double drift_norm_ = 0.0;
  Eigen::VectorXd relax_;
};

enum class FPScheme { kImexEuler, kSsprk3Explicit };

struct FPStepConfig {
  double dt = 1e-3;
  double epsilon = 0.0;
  FPScheme scheme = FPScheme::kImexEuler;
  bool check_stability = true;
};

/// Transport and drift blocks only.
SpectralField fp_explicit_rhs(const PolymerField& psi, const SpectralField& u,
                              const FPOperator& op);
/// Full tendency: transport + eps Lap + drift - relaxation.
SpectralField fp_rhs(const PolymerField& psi, const SpectralField& u, const FPOperator& op,
                     const FPStepConfig& cfg);

/// Largest stable dt for the scheme at the given velocity.
double fp_stability_bound(const SpectralField& u, const FPOperator& op, const FPStepConfig& cfg);

using VelocityProvider = std::function<SpectralField(double)>;

/// One step; throws StabilityViolation if dt exceeds fp_stability_bound.
PolymerField fp_step(const PolymerField& psi, const VelocityProvider& u, const FPOperator& op,
                     const FPStepConfig& cfg);
PolymerField fp_step(const PolymerField& psi, const SpectralField& u, const FPOperator& op,
                     const FPStepConfig& cfg);

struct FPEnergy {
  double l2m;  // |psi|^2 in W^{s,2}_x L^2_M
  double h1m;  // |psi|^2 in W^{s,2}_x H^1_M (seminorm in q)
};
/// From the coefficients (eigenvalue route for the H^1_M part).
FPEnergy fp_energy(const PolymerField& psi, int s);
/// Same quantities with the q-integrals done on the quadrature nodes.
FPEnergy fp_energy_quadrature(const PolymerField& psi, int s);

struct NonnegativityReport {
  double min_psi;
  double fraction_negative;
};
/// psi = M phi sampled on (grid points) x (quadrature nodes).
NonnegativityReport nonnegativity_report(const PolymerField& psi);

/// Kramers stress T(psi)(x) = sum_i c_i(x) S_i as a 3-component tensor field.
SpectralField stress_field(const PolymerField& psi);
SpectralField stress_field(const SpectralField& coeffs, const ConfigBasis& basis);

}  // namespace fene

#endif  // FENE_FOKKER_PLANCK_HPP

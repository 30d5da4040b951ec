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

// Constitutive relations of the compressible FENE dumbbell model: Warner
// spring potential and force, Maxwellian, isentropic pressure, Newtonian
// viscous stress, and the density <-> r change of variables that turns the
// mass/momentum balance into a symmetric hyperbolic-parabolic system.

#ifndef FENE_MODEL_HPP
#define FENE_MODEL_HPP

#include <Eigen/Core>

#include <array>
#include <numbers>

namespace fene {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

struct ModelParams {
  double a = 1.0;        // pressure coefficient, p = a rho^gamma
  double gamma = 1.4;    // adiabatic exponent
  double mu_s = 1.0;     // shear viscosity
  double mu_b = 0.0;     // bulk viscosity
  double epsilon = 0.0;  // centre-of-mass diffusion
  double a11 = 1.0;      // Rouse coefficient
  double lambda = 1.0;   // Deborah number
  double b = 4.0;        // FENE extensibility, |q|^2 < b
  int dim = 2;

  /// Throws DomainError naming the first violated constraint.
  void validate() const;

  /// A11 / (4 lambda), the rate in front of the relaxation operator.
  double relaxation_rate() const { return a11 / (4.0 * lambda); }
};

/// External body force, restricted to trigonometric polynomials so that it is
/// represented exactly on the spectral grid.
struct ForcingSpec {
  enum class Kind { kZero, kSteadyField, kTimePeriodic };
  Kind kind = Kind::kZero;
  double amplitude = 0.0;
  std::array<int, 2> mode{1, 0};
  double frequency = 1.0;  // only used by kTimePeriodic

  /// f(t, x) = A sin(k.x) k_perp / |k|, times cos(omega t) when time periodic.
  Vec2 evaluate(double t, const Vec2& x) const;
  /// Time envelope multiplying the steady spatial pattern.
  double time_factor(double t) const;
};

/// Warner potential U(s) = -(b/2) log(1 - 2s/b), s in [0, b/2).
double potential_u(double s, const ModelParams& p);
/// U'(s) = b / (b - 2s).
double potential_u_prime(double s, const ModelParams& p);

/// F(q) = U'(|q|^2/2) q = b q / (b - |q|^2).
Vec2 spring_force(const Vec2& q, const ModelParams& p);

/// Normalizer Z = int_B (1 - |q|^2/b)^{b/2} dq = 2 pi b / (b + 2) in two dimensions.
double maxwellian_normalizer(double b);
/// M(q) = Z^{-1} (1 - |q|^2/b)^{b/2}.
double maxwellian(const Vec2& q, const ModelParams& p);
double maxwellian(double q_norm_sq, double b);

double pressure(double rho, const ModelParams& p);

/// r = sqrt(2 a gamma / (gamma - 1)) rho^{(gamma-1)/2}.
double density_to_r(double rho, const ModelParams& p);
double r_to_density(double r, const ModelParams& p);
/// D(r) = 1 / rho(r).
double d_coefficient(double r, const ModelParams& p);

/// S(grad u) = mu_s (grad u + grad u^T - (2/d) div u I) + mu_b div u I, with
/// grad_u(i, j) = d u_i / d x_j.
Mat2 viscous_stress(const Mat2& grad_u, const ModelParams& p);

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace fene

#endif  // FENE_MODEL_HPP

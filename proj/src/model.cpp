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

#include "fene/model.hpp"

#include "fene/error.hpp"

#include <cmath>
#include <string>

namespace fene {

namespace {

void require(bool ok, const char* constraint, double value) {
  if (!ok) {
    throw DomainError(std::string("model parameter violates ") + constraint +
                      " (got " + std::to_string(value) + ")");
  }
}

}  // namespace

void ModelParams::validate() const {
  require(std::isfinite(a) && a > 0.0, "a > 0", a);
  require(std::isfinite(gamma) && gamma > 1.0, "gamma > 1", gamma);
  require(std::isfinite(mu_s) && mu_s > 0.0, "mu_s > 0", mu_s);
  require(std::isfinite(mu_b) && mu_b >= 0.0, "mu_b >= 0", mu_b);
  require(std::isfinite(epsilon) && epsilon >= 0.0, "epsilon >= 0", epsilon);
  require(std::isfinite(a11) && a11 > 0.0, "a11 > 0", a11);
  require(std::isfinite(lambda) && lambda > 0.0, "lambda > 0", lambda);
  require(std::isfinite(b) && b > 2.0, "b > 2", b);
  require(dim == 2, "dim == 2", dim);
}

double ForcingSpec::time_factor(double t) const {
  switch (kind) {
    case Kind::kZero: return 0.0;
    case Kind::kSteadyField: return 1.0;
    case Kind::kTimePeriodic: return std::cos(frequency * t);
  }
  return 0.0;
}

Vec2 ForcingSpec::evaluate(double t, const Vec2& x) const {
  if (kind == Kind::kZero || amplitude == 0.0) return Vec2::Zero();
  const double k1 = mode[0];
  const double k2 = mode[1];
  const double norm = std::hypot(k1, k2);
  if (norm == 0.0) return Vec2::Zero();
  const double phase = std::sin(k1 * x[0] + k2 * x[1]);
  const double s = amplitude * time_factor(t) * phase / norm;
  return Vec2(-k2 * s, k1 * s);
}

double potential_u(double s, const ModelParams& p) {
  if (!(s >= 0.0) || !(s < 0.5 * p.b)) {
    throw DomainError("potential_u: argument outside [0, b/2)");
  }
  return -0.5 * p.b * std::log1p(-2.0 * s / p.b);
}

double potential_u_prime(double s, const ModelParams& p) {
  if (!(s >= 0.0) || !(s < 0.5 * p.b)) {
    throw DomainError("potential_u_prime: argument outside [0, b/2)");
  }
  return p.b / (p.b - 2.0 * s);
}

Vec2 spring_force(const Vec2& q, const ModelParams& p) {
  const double q2 = q.squaredNorm();
  if (!(q2 < p.b)) throw DomainError("spring_force: |q|^2 >= b");
  return (p.b / (p.b - q2)) * q;
}

double maxwellian_normalizer(double b) { return kTwoPi * b / (b + 2.0); }

double maxwellian(double q_norm_sq, double b) {
  if (!(q_norm_sq >= 0.0) || !(q_norm_sq < b)) {
    throw DomainError("maxwellian: point outside the open ball |q|^2 < b");
  }
  return std::pow(1.0 - q_norm_sq / b, 0.5 * b) / maxwellian_normalizer(b);
}

double maxwellian(const Vec2& q, const ModelParams& p) {
  return maxwellian(q.squaredNorm(), p.b);
}

double pressure(double rho, const ModelParams& p) {
  if (!(rho >= 0.0)) throw DomainError("pressure: negative density");
  return p.a * std::pow(rho, p.gamma);
}

double density_to_r(double rho, const ModelParams& p) {
  if (!(rho > 0.0)) throw DomainError("density_to_r: density must be > 0");
  return std::sqrt(2.0 * p.a * p.gamma / (p.gamma - 1.0)) *
         std::pow(rho, 0.5 * (p.gamma - 1.0));
}

double r_to_density(double r, const ModelParams& p) {
  if (!(r > 0.0)) throw DomainError("r_to_density: r must be > 0");
  const double scale = (p.gamma - 1.0) / (2.0 * p.a * p.gamma);
  return std::pow(scale * r * r, 1.0 / (p.gamma - 1.0));
}

double d_coefficient(double r, const ModelParams& p) {
  if (!(r > 0.0)) throw DomainError("d_coefficient: r must be > 0");
  return 1.0 / r_to_density(r, p);
}

Mat2 viscous_stress(const Mat2& grad_u, const ModelParams& p) {
  const double div = grad_u.trace();
  const double d = static_cast<double>(p.dim);
  return p.mu_s * (grad_u + grad_u.transpose() - (2.0 / d) * div * Mat2::Identity()) +
         p.mu_b * div * Mat2::Identity();
}

}  // namespace fene

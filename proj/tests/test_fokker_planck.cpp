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

#include "fene/error.hpp"
#include "fene/fokker_planck.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace fene;

namespace {

std::shared_ptr<const ConfigBasis> small_basis(int n = 12) {
  static auto quad = build_quadrature(4.0, 16, 16);
  return eigen_basis(quad, n);
}

SpectralField shear(const TorusGrid& g, double a) {
  return from_function(g, 2, [a](int c, double, double x2) { return c == 0 ? a * std::sin(x2) : 0.0; });
}

SpectralField zero_velocity(const TorusGrid& g) { return SpectralField(g, 2); }

PolymerField random_polymer(const TorusGrid& g, std::shared_ptr<const ConfigBasis> basis, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 0.05);
  std::vector<double> a(static_cast<std::size_t>(basis->size()) * 3);
  for (double& x : a) x = n(rng);
  return make_polymer(g, basis, [a](int i, double x1, double x2) {
    return a[3 * i] * std::cos(x1) + a[3 * i + 1] * std::sin(x2) + a[3 * i + 2] * std::cos(x1 - x2);
  });
}

}  // namespace

TEST_CASE("equilibrium polymer") {
  const TorusGrid g(8);
  const auto basis = small_basis();
  const PolymerField psi = equilibrium_polymer(g, basis);
  CHECK(polymer_mass(psi) == doctest::Approx(kTwoPi * kTwoPi));
  const FPEnergy e = fp_energy(psi, 3);
  CHECK(e.l2m == doctest::Approx(kTwoPi * kTwoPi));
  CHECK(e.h1m == doctest::Approx(0.0));
  const SpectralField t = stress_field(psi);
  CHECK(grid_max(t, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(grid_min(t, 2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(grid_max(t, 1)) < 1e-12);
}

TEST_CASE("equilibrium at rest has zero tendency") {
  const TorusGrid g(8);
  const auto basis = small_basis();
  const FPOperator op(basis, ModelParams{}, 16);
  FPStepConfig cfg;
  cfg.epsilon = 0.01;
  const SpectralField r = fp_rhs(equilibrium_polymer(g, basis), zero_velocity(g), op, cfg);
  CHECK(sobolev_norm(r, 0) == 0.0);
  CHECK(op.relaxation()(0) == 0.0);
}

TEST_CASE("operator matrices") {
  const auto basis = small_basis();
  const FPOperator both(basis, ModelParams{}, 16, ChiMode::kBoth);
  const FPOperator off(basis, ModelParams{}, 16, ChiMode::kOff);
  CHECK((off.transport_matrix() - Eigen::MatrixXd::Identity(12, 12)).norm() == 0.0);
  // C is symmetric and close to the identity for a thin boundary layer
  CHECK((both.transport_matrix() - both.transport_matrix().transpose()).norm() < 1e-14);
  CHECK((both.transport_matrix() - Eigen::MatrixXd::Identity(12, 12)).cwiseAbs().maxCoeff() < 0.05);
  CHECK(both.relaxation_rate() == doctest::Approx(0.25));
  for (int i = 1; i < 12; ++i) CHECK(both.relaxation()(i) == doctest::Approx(0.25 * basis->eigenvalue(i)));
  // the constant mode has no gradient, so row 0 of every drift matrix vanishes
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(both.drift_matrix(a, b).row(0).norm() == 0.0);
  CHECK(both.stacked_drift().cols() == 48);
  CHECK(both.drift_norm() > 0.0);
  CHECK_THROWS_AS(FPOperator(basis, ModelParams{}, 0), DomainError);
}

TEST_CASE("polymer mass is conserved under shear") {
  const TorusGrid g(16);
  const auto basis = small_basis();
  const FPOperator op(basis, ModelParams{}, 16);
  for (FPScheme scheme : {FPScheme::kImexEuler, FPScheme::kSsprk3Explicit}) {
    FPStepConfig cfg;
    cfg.dt = 0.01;
    cfg.epsilon = 0.01;
    cfg.scheme = scheme;
    PolymerField psi = random_polymer(g, basis, 1);
    const double m0 = polymer_mass(psi);
    const SpectralField u = shear(g, 0.3);
    for (int k = 0; k < 30; ++k) psi = fp_step(psi, u, op, cfg);
    CHECK(std::abs(polymer_mass(psi) - m0) < 1e-12 * m0);
    CHECK(psi.time == doctest::Approx(0.3));
  }
}

TEST_CASE("pure relaxation") {
  const TorusGrid g(8);
  const auto basis = small_basis();
  const FPOperator op(basis, ModelParams{}, 16);
  const PolymerField psi0 = make_polymer(g, basis, [](int i, double, double) { return i == 5 ? 0.2 : 0.0; });
  const double kl = op.relaxation()(5);
  const int n = 20;
  FPStepConfig cfg;
  cfg.dt = 0.01;

  PolymerField imex = psi0;
  for (int k = 0; k < n; ++k) imex = fp_step(imex, zero_velocity(g), op, cfg);
  CHECK(imex.coeffs(5, 0, 0).real() == doctest::Approx(0.2 * std::pow(1.0 + cfg.dt * kl, -n)).epsilon(1e-13));

  cfg.scheme = FPScheme::kSsprk3Explicit;
  PolymerField rk = psi0;
  for (int k = 0; k < n; ++k) rk = fp_step(rk, zero_velocity(g), op, cfg);
  // the RK3 stability polynomial 1 - z + z^2/2 - z^3/6
  const double z = cfg.dt * kl;
  CHECK(rk.coeffs(5, 0, 0).real() == doctest::Approx(0.2 * std::pow(1 - z + z * z / 2 - z * z * z / 6, n)).epsilon(1e-12));
  CHECK(rk.coeffs(5, 0, 0).real() == doctest::Approx(0.2 * std::exp(-kl * n * cfg.dt)).epsilon(1e-5));
}

TEST_CASE("relaxation at rest dissipates the L2_M energy") {
  const TorusGrid g(8);
  const auto basis = small_basis();
  const FPOperator op(basis, ModelParams{}, 16);
  FPStepConfig cfg;
  cfg.dt = 0.02;
  cfg.epsilon = 0.01;
  for (unsigned seed = 0; seed < 20; ++seed) {
    PolymerField psi = random_polymer(g, basis, 100 + seed);
    cfg.scheme = seed % 2 ? FPScheme::kSsprk3Explicit : FPScheme::kImexEuler;
    // subtract M times the spatial mean of the marginal
    auto deviation = [](const PolymerField& p) {
      PolymerField d = p;
      d.coeffs(0, 0, 0) = 0.0;
      return fp_energy(d, 0).l2m;
    };
    double previous = deviation(psi);
    for (int k = 0; k < 10; ++k) {
      psi = fp_step(psi, zero_velocity(g), op, cfg);
      const double e = deviation(psi);
      CHECK(e <= previous * (1 + 1e-14));
      previous = e;
    }
  }
}

TEST_CASE("marginal density is transported when chi only enters the drift") {
  const TorusGrid g(16);
  const auto full = small_basis(12);
  const auto single = small_basis(1);
  const FPOperator op_full(full, ModelParams{}, 16, ChiMode::kDriftOnly);
  const FPOperator op_single(single, ModelParams{}, 16, ChiMode::kDriftOnly);
  FPStepConfig cfg;
  cfg.dt = 0.01;
  cfg.epsilon = 0.02;
  cfg.scheme = FPScheme::kSsprk3Explicit;
  auto eta = [](int i, double x1, double x2) { return i == 0 ? 0.3 * std::cos(x1) * std::sin(x2) : (i == 3 ? 0.1 * std::sin(x1) : 0.0); };
  PolymerField a = make_polymer(g, full, eta);
  PolymerField b = make_polymer(g, single, eta);
  const SpectralField u = from_function(g, 2, [](int c, double x1, double x2) {
    return c == 0 ? 0.4 * std::sin(x2) : 0.2 * std::cos(x1);
  });
  for (int k = 0; k < 20; ++k) {
    a = fp_step(a, u, op_full, cfg);
    b = fp_step(b, u, op_single, cfg);
  }
  CHECK(sobolev_norm(marginal_density(a) - marginal_density(b), 0) < 1e-13);
}

TEST_CASE("stability bound is enforced") {
  const TorusGrid g(16);
  const auto basis = small_basis();
  const FPOperator op(basis, ModelParams{}, 16);
  const SpectralField u = shear(g, 1.0);
  FPStepConfig cfg;
  cfg.scheme = FPScheme::kSsprk3Explicit;
  const double bound = fp_stability_bound(u, op, cfg);
  CHECK(bound > 0.0);
  cfg.dt = 1.5 * bound;
  CHECK_THROWS_AS(fp_step(equilibrium_polymer(g, basis), u, op, cfg), StabilityViolation);
  // at rest only the relaxation limits the explicit scheme
  const SpectralField rest(g, 2);
  CHECK(std::isfinite(fp_stability_bound(rest, op, cfg)));
  cfg.scheme = FPScheme::kImexEuler;
  CHECK(std::isinf(fp_stability_bound(rest, op, cfg)));
}

TEST_CASE("energy routes agree") {
  const TorusGrid g(8);
  const auto basis = small_basis();
  const PolymerField psi = random_polymer(g, basis, 9);
  for (int s : {0, 2}) {
    const FPEnergy a = fp_energy(psi, s);
    const FPEnergy b = fp_energy_quadrature(psi, s);
    CHECK(a.l2m == doctest::Approx(b.l2m).epsilon(1e-11));
    CHECK(a.h1m == doctest::Approx(b.h1m).epsilon(1e-9));
  }
}

TEST_CASE("sampled positivity") {
  const TorusGrid g(8);
  const auto basis = small_basis();
  const NonnegativityReport ok = nonnegativity_report(equilibrium_polymer(g, basis));
  CHECK(ok.min_psi >= 0.0);
  CHECK(ok.fraction_negative == 0.0);
  const PolymerField bad = make_polymer(g, basis, [](int i, double x1, double) { return i == 0 ? -2.0 * (1 + std::cos(x1)) : 0.0; });
  CHECK(nonnegativity_report(bad).fraction_negative > 0.0);
}

TEST_CASE("stress is linear in the coefficients") {
  const TorusGrid g(8);
  const auto basis = small_basis();
  const PolymerField a = random_polymer(g, basis, 2);
  SpectralField twice = a.coeffs;
  twice *= 2.0;
  SpectralField ta = stress_field(a.coeffs, *basis);
  ta *= 2.0;
  CHECK(sobolev_norm(stress_field(twice, *basis) - ta, 0) < 1e-13);
}

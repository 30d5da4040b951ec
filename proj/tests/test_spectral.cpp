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
#include "fene/model.hpp"
#include "fene/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace fene;

namespace {

SpectralField scalar(const TorusGrid& g, double (*f)(double, double)) {
  return from_function(g, 1, [f](int, double x1, double x2) { return f(x1, x2); });
}

double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  const GridValues va = backward(a);
  const GridValues vb = backward(b);
  double m = 0.0;
  for (std::size_t i = 0; i < va.values.size(); ++i) m = std::max(m, std::abs(va.values[i] - vb.values[i]));
  return m;
}

}  // namespace

TEST_CASE("grid geometry") {
  const TorusGrid g(16);
  CHECK(g.size() == 256);
  CHECK(g.spacing() == doctest::Approx(kTwoPi / 16));
  CHECK(g.wavenumber(3) == 3);
  CHECK(g.wavenumber(8) == 8);
  CHECK(g.wavenumber(9) == -7);
  CHECK(g.mirror(3) == 13);
  CHECK(g.dealias_cutoff() == 5);
  CHECK_THROWS_AS(TorusGrid(7), DomainError);
  CHECK_THROWS_AS(TorusGrid(6), DomainError);
}

TEST_CASE("transforms round trip and stay hermitian") {
  const TorusGrid g(16);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-1, 1);
  GridValues v(g, 2);
  for (double& x : v.values) x = d(rng);
  const SpectralField f = forward(v);
  CHECK(f.hermitian_defect() == 0.0);
  const GridValues w = backward(f);
  for (std::size_t i = 0; i < v.values.size(); ++i) CHECK(w.values[i] == doctest::Approx(v.values[i]).epsilon(1e-13));
}

TEST_CASE("derivatives of trigonometric fields are exact") {
  const TorusGrid g(16);
  const auto f = scalar(g, [](double x1, double x2) { return std::sin(2 * x1) * std::cos(3 * x2); });
  const auto fx = scalar(g, [](double x1, double x2) { return 2 * std::cos(2 * x1) * std::cos(3 * x2); });
  const auto fyy = scalar(g, [](double x1, double x2) { return -9 * std::sin(2 * x1) * std::cos(3 * x2); });
  CHECK(max_abs_diff(derivative(f, {1, 0}), fx) < 1e-13);
  CHECK(max_abs_diff(derivative(f, {0, 2}), fyy) < 1e-12);
  SpectralField lap = f;
  lap *= -13.0;
  CHECK(max_abs_diff(laplacian(f), lap) < 1e-12);
}

TEST_CASE("integrals and norms") {
  const TorusGrid g(16);
  const auto one = scalar(g, [](double, double) { return 1.0; });
  CHECK(integral(one) == doctest::Approx(kTwoPi * kTwoPi));
  CHECK(sobolev_norm(one, 3) == doctest::Approx(kTwoPi));
  const auto s = scalar(g, [](double x1, double) { return std::sin(x1); });
  // int sin^2 = 2 pi^2, and (1 + |k|^2)^s = 2^s for |k| = 1
  CHECK(inner_product(s, s) == doctest::Approx(2 * M_PI * M_PI));
  CHECK(sobolev_norm_sq(s, 2) == doctest::Approx(4 * 2 * M_PI * M_PI));
  CHECK(grid_max(s) == doctest::Approx(std::sin(g.coordinate(4))));
}

TEST_CASE("dealiased product of resolved modes is exact") {
  const TorusGrid g(24);
  const auto a = scalar(g, [](double x1, double x2) { return std::cos(x1) + std::sin(2 * x2); });
  const auto b = scalar(g, [](double x1, double x2) { return std::sin(3 * x1 - x2); });
  const auto ab = scalar(g, [](double x1, double x2) {
    return (std::cos(x1) + std::sin(2 * x2)) * std::sin(3 * x1 - x2);
  });
  CHECK(max_abs_diff(dealiased_product(a, b), ab) < 1e-13);
}

TEST_CASE("truncation and projection") {
  const TorusGrid g(16);
  const auto f = scalar(g, [](double x1, double x2) { return std::cos(x1) + std::cos(6 * x2); });
  const auto low = scalar(g, [](double x1, double) { return std::cos(x1); });
  CHECK(max_abs_diff(truncate(f, 5), low) < 1e-14);
  CHECK(max_abs_diff(project_pn(f, 6), f) < 1e-14);
}

TEST_CASE("sup norms") {
  const TorusGrid g(32);
  const SpectralField u = from_function(g, 2, [](int c, double, double x2) {
    return c == 0 ? 0.5 * std::sin(x2) : 0.0;
  });
  // |u| + |du| + |d2u| peaks where sin + cos combination is largest
  CHECK(sup_norm_gradient(u) == doctest::Approx(0.5).epsilon(1e-12));
  double expect = 0.0;
  for (int i = 0; i < 32; ++i) {
    const double x = g.coordinate(i);
    expect = std::max(expect, 0.5 * (2 * std::abs(std::sin(x)) + std::abs(std::cos(x))));
  }
  CHECK(sup_norm_w2inf(u) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("field arithmetic rejects mismatched grids") {
  SpectralField a(TorusGrid(8), 1);
  SpectralField b(TorusGrid(16), 1);
  CHECK_THROWS_AS(a += b, SizeMismatch);
}

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

#include "fene/jacobi.hpp"

#include <doctest.h>

#include <cmath>

using namespace fene;

TEST_CASE("jacobi polynomial values") {
  // reference values from an independent implementation
  CHECK(jacobi_p(3, 1.0, 2.0, 0.3) == doctest::Approx(-0.5815000000000001).epsilon(1e-14));
  CHECK(jacobi_p(4, 2.0, 1.0, -0.7) == doctest::Approx(-0.7579375000000003).epsilon(1e-14));
  CHECK(jacobi_p(0, 0.5, 0.5, 0.2) == 1.0);
  // Legendre P_2
  CHECK(jacobi_p(2, 0.0, 0.0, 0.4) == doctest::Approx(0.5 * (3 * 0.16 - 1)));
}

TEST_CASE("jacobi derivative matches finite differences") {
  for (double x : {-0.8, -0.1, 0.35, 0.9}) {
    const double h = 1e-6;
    const double fd = (jacobi_p(5, 1.5, 0.5, x + h) - jacobi_p(5, 1.5, 0.5, x - h)) / (2 * h);
    CHECK(jacobi_p_derivative(5, 1.5, 0.5, x) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("gauss-jacobi nodes and weights") {
  // weight (1 - x), five points
  const GaussRule g = gauss_jacobi(5, 1.0, 0.0);
  const double nodes[] = {-0.9203802858970626, -0.6039731642527836, -0.1240503795052277,
                          0.39092854670727223, 0.8029298284023472};
  const double weights[] = {0.3871263609066059, 0.6686985523774788, 0.5855479483386794,
                            0.2956354802904667, 0.0629916580867692};
  REQUIRE(g.nodes.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(g.nodes[i] == doctest::Approx(nodes[i]).epsilon(1e-14));
    CHECK(g.weights[i] == doctest::Approx(weights[i]).epsilon(1e-13));
  }
}

TEST_CASE("gauss-jacobi is exact to degree 2n - 1") {
  for (double alpha : {0.0, 0.5, 1.0, 2.7}) {
    const int n = 8;
    const GaussRule g = gauss_jacobi(n, alpha, 0.0);
    // int_{-1}^{1} (1 - x)^alpha (1 + x)^k dx = 2^{alpha + k + 1} B(alpha + 1, k + 1)
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += g.weights[i] * std::pow(1.0 + g.nodes[i], k);
      const double exact = std::pow(2.0, alpha + k + 1) *
                           std::exp(std::lgamma(alpha + 1) + std::lgamma(k + 1.0) -
                                    std::lgamma(alpha + k + 2));
      CHECK(sum == doctest::Approx(exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("norms are consistent with the rule") {
  const double alpha = 1.5, beta = 0.5;
  const GaussRule g = gauss_jacobi(12, alpha, beta);
  for (int n = 0; n < 6; ++n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double p = jacobi_p(n, alpha, beta, g.nodes[i]);
      sum += g.weights[i] * p * p;
    }
    CHECK(sum == doctest::Approx(jacobi_norm_sq(n, alpha, beta)).epsilon(1e-12));
  }
}

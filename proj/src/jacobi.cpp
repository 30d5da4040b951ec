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

#include "fene/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace fene {

double jacobi_p(int n, double alpha, double beta, double x) {
  if (n < 0) return 0.0;
  double p0 = 1.0;
  if (n == 0) return p0;
  double p1 = 0.5 * (alpha - beta + (alpha + beta + 2.0) * x);
  for (int k = 2; k <= n; ++k) {
    const double ab = alpha + beta;
    const double c = 2.0 * k + ab;
    const double a1 = 2.0 * k * (k + ab) * (c - 2.0);
    const double a2 = (c - 1.0) * (alpha * alpha - beta * beta);
    const double a3 = (c - 2.0) * (c - 1.0) * c;
    const double a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c;
    const double p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double jacobi_p_derivative(int n, double alpha, double beta, double x) {
  if (n <= 0) return 0.0;
  return 0.5 * (n + alpha + beta + 1.0) * jacobi_p(n - 1, alpha + 1.0, beta + 1.0, x);
}

double jacobi_norm_sq(int n, double alpha, double beta) {
  const double ab = alpha + beta;
  const double log_h = (ab + 1.0) * std::log(2.0) - std::log(2.0 * n + ab + 1.0) +
                       std::lgamma(n + alpha + 1.0) + std::lgamma(n + beta + 1.0) -
                       std::lgamma(n + ab + 1.0) - std::lgamma(n + 1.0);
  // n = 0 with alpha + beta = -1 would need the limit; not used here.
  return std::exp(log_h);
}

GaussRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw DomainError("gauss_jacobi: need at least one node");
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw DomainError("gauss_jacobi: exponents must exceed -1");
  }
  // Golub-Welsch: symmetric tridiagonal Jacobi matrix of the monic recurrence.
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(std::max(n - 1, 1));
  const double ab = alpha + beta;
  for (int k = 0; k < n; ++k) {
    const double c = 2.0 * k + ab;
    if (k == 0) {
      diag(k) = (beta - alpha) / (ab + 2.0);
    } else {
      diag(k) = (beta * beta - alpha * alpha) / (c * (c + 2.0));
    }
    if (k + 1 < n) {
      const double j = k + 1.0;
      const double cj = 2.0 * j + ab;
      const double num = 4.0 * j * (j + alpha) * (j + beta) * (j + ab);
      const double den = cj * cj * (cj + 1.0) * (cj - 1.0);
      off(k) = std::sqrt(num / den);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off.head(std::max(n - 1, 0)), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw EigenSolverFailure("gauss_jacobi: tridiagonal eigensolver failed");
  }

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double log_c = (ab + 1.0) * std::log(2.0) + std::lgamma(n + alpha + 1.0) +
                       std::lgamma(n + beta + 1.0) - std::lgamma(n + ab + 1.0) -
                       std::lgamma(n + 1.0);
  for (int i = 0; i < n; ++i) {
    double x = solver.eigenvalues()(i);
    for (int it = 0; it < 8; ++it) {
      const double p = jacobi_p(n, alpha, beta, x);
      const double dp = jacobi_p_derivative(n, alpha, beta, x);
      const double step = p / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double dp = jacobi_p_derivative(n, alpha, beta, x);
    rule.nodes[i] = x;
    rule.weights[i] = std::exp(log_c) / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace fene

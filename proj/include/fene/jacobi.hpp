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

#ifndef FENE_JACOBI_HPP
#define FENE_JACOBI_HPP

#include <vector>

namespace fene {

/// Nodes and weights of an interval rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// P_n^{(alpha,beta)}(x) by the three-term recurrence.
double jacobi_p(int n, double alpha, double beta, double x);
/// d/dx P_n^{(alpha,beta)}(x) = (n + alpha + beta + 1)/2 P_{n-1}^{(alpha+1,beta+1)}(x).
double jacobi_p_derivative(int n, double alpha, double beta, double x);

/// Squared norm h_n = int_{-1}^{1} (1-x)^alpha (1+x)^beta P_n(x)^2 dx.
double jacobi_norm_sq(int n, double alpha, double beta);

/// n-point Gauss-Jacobi rule for the weight (1-x)^alpha (1+x)^beta, alpha,beta > -1.
/// Nodes come from the Golub-Welsch eigenproblem and are polished by Newton
/// steps on P_n; weights use the closed-form Christoffel expression.
GaussRule gauss_jacobi(int n, double alpha, double beta);

inline GaussRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

}  // namespace fene

#endif  // FENE_JACOBI_HPP

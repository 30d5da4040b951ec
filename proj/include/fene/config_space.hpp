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

// Configuration space: the ball B = {|q|^2 < b} in R^2.
//
// Integrals are tensor rules in (t, theta) with t = |q|^2 / b, dq = (b/2) dt dtheta.
// The angular direction uses the uniform trapezoid rule. The radial direction
// uses Gauss-Jacobi nodes for the weight (1 - t)^{b/2 - 1}; since
// M ~ (1 - t)^{b/2} and M U' ~ (1 - t)^{b/2 - 1}, every Maxwellian-weighted
// polynomial integrand, including the Kramers stress integrand, is integrated
// exactly up to the rule's degree. A Gauss-Legendre companion rule covers
// integrands that carry no boundary weight at all (e.g. the area of B).
//
// The relaxation operator L psi = -div(M grad(psi/M)) is discretized in weak
// form on phi = psi/M with basis functions
//   s^m P_k^{(b/2, m)}(2t - 1) {cos m theta, sin m theta},   s = |q|/sqrt(b),
// which are polynomials in q. Angular modes decouple, so the generalized
// eigenproblem is solved one radial block per m.

#ifndef FENE_CONFIG_SPACE_HPP
#define FENE_CONFIG_SPACE_HPP

#include "fene/model.hpp"

#include <Eigen/Core>

#include <functional>
#include <memory>
#include <vector>

namespace fene {

struct QuadNode {
  double t;       // |q|^2 / b
  double radius;  // |q|
  double angle;
  Vec2 q;
};

class ConfigQuadrature {
 public:
  ConfigQuadrature(double b, int n_radial, int n_angular);

  double b() const noexcept { return b_; }
  int n_radial() const noexcept { return n_radial_; }
  int n_angular() const noexcept { return n_angular_; }
  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  /// Exponent of the (1 - t) weight folded into the radial rule.
  double jacobi_exponent() const noexcept { return 0.5 * b_ - 1.0; }

  /// Node set of the boundary-weighted rule; weights are dq weights (area
  /// element included), so sum_n w_n g(q_n) ~ int_B g dq for integrands that
  /// carry a factor (1 - t)^{b/2 - 1}.
  const std::vector<QuadNode>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  /// M at the nodes.
  const std::vector<double>& maxwellian_values() const noexcept { return maxwellian_; }

  /// One-dimensional radial part: t nodes and weights w with
  /// sum_j w_j g(t_j) = int_0^1 (1 - t)^{b/2 - 1} g(t) dt for polynomial g.
  const std::vector<double>& radial_nodes() const noexcept { return radial_t_; }
  const std::vector<double>& radial_weights() const noexcept { return radial_w_; }

  const std::vector<QuadNode>& plain_nodes() const noexcept { return plain_nodes_; }
  const std::vector<double>& plain_weights() const noexcept { return plain_weights_; }

  /// int_B g dq on the boundary-weighted rule.
  double integrate(const std::function<double(const QuadNode&)>& g) const;
  /// int_B g dq on the Gauss-Legendre companion rule (smooth g, no weight).
  double integrate_plain(const std::function<double(const QuadNode&)>& g) const;

 private:
  double b_;
  int n_radial_;
  int n_angular_;
  std::vector<double> radial_t_;
  std::vector<double> radial_w_;
  std::vector<QuadNode> nodes_;
  std::vector<double> weights_;
  std::vector<double> maxwellian_;
  std::vector<QuadNode> plain_nodes_;
  std::vector<double> plain_weights_;
};

/// Validates b > 2, n_radial >= 4, n_angular >= 8 and even.
std::shared_ptr<const ConfigQuadrature> build_quadrature(double b, int n_radial, int n_angular);

/// Radial stiffness and mass blocks of one angular mode m.
struct ModeBlock {
  int m = 0;
  Eigen::MatrixXd stiffness;  // a(phi_k, phi_l) = int M grad phi_k . grad phi_l dq
  Eigen::MatrixXd mass;       // m(phi_k, phi_l) = int M phi_k phi_l dq
};

struct WeakOperator {
  int radial_dim = 0;
  std::vector<ModeBlock> blocks;  // m = 0 .. max_mode
};

/// Highest angular mode that the quadrature resolves for the drift tensors.
int max_angular_mode(const ConfigQuadrature& quad);
/// Default radial dimension per angular mode, tied to n_radial.
int default_radial_dim(const ConfigQuadrature& quad);

/// Evaluation of the radial/angular polynomial basis s^m p_k(t) trig(m theta).
struct RawBasisValue {
  double value;
  Vec2 gradient;
};
RawBasisValue raw_basis(int m, int parity, int k, const Vec2& q, double b);

WeakOperator assemble_operator(const ConfigQuadrature& quad, int radial_dim = 0);

/// a(f, g) = int_B M grad f . grad g dq on the weighted rule.
double weak_stiffness(const ConfigQuadrature& quad,
                      const std::function<Vec2(const QuadNode&)>& grad_f,
                      const std::function<Vec2(const QuadNode&)>& grad_g);

struct BasisFunction {
  int m = 0;
  int parity = 0;  // 0: cos(m theta), 1: sin(m theta)
  double eigenvalue = 0.0;
  double residual = 0.0;       // |a v - lambda m v|
  Eigen::VectorXd radial;      // coefficients in the raw radial basis
};

/// First n generalized eigenpairs of (stiffness, mass), M-orthonormal,
/// sorted by eigenvalue (ties by m, then cos before sin).
class ConfigBasis {
 public:
  ConfigBasis(std::shared_ptr<const ConfigQuadrature> quad, int n_basis, int radial_dim = 0);

  const ConfigQuadrature& quadrature() const noexcept { return *quad_; }
  std::shared_ptr<const ConfigQuadrature> quadrature_ptr() const noexcept { return quad_; }
  int size() const noexcept { return static_cast<int>(functions_.size()); }
  int radial_dim() const noexcept { return radial_dim_; }
  double eigenvalue(int i) const { return functions_[i].eigenvalue; }
  const BasisFunction& function(int i) const { return functions_[i]; }
  std::vector<double> eigenvalues() const;

  double value(int i, const Vec2& q) const;
  Vec2 gradient(int i, const Vec2& q) const;

  /// phi_i at the weighted-rule nodes: (n_basis x n_nodes).
  const Eigen::MatrixXd& node_values() const noexcept { return values_; }
  const Eigen::MatrixXd& node_grad_x() const noexcept { return grad_x_; }
  const Eigen::MatrixXd& node_grad_y() const noexcept { return grad_y_; }

  /// Kramers stress of psi = M phi_i: int M phi_i U' q (x) q dq.
  const Mat2& stress_of(int i) const { return stress_[i]; }
  /// Max |a v - lambda m v| over the selected pairs.
  double max_residual() const;

  /// Gram matrix int M phi_i phi_j dq on the quadrature.
  Eigen::MatrixXd gram() const;

 private:
  std::shared_ptr<const ConfigQuadrature> quad_;
  int radial_dim_;
  std::vector<BasisFunction> functions_;
  Eigen::MatrixXd values_;
  Eigen::MatrixXd grad_x_;
  Eigen::MatrixXd grad_y_;
  std::vector<Mat2> stress_;
};

std::shared_ptr<const ConfigBasis> eigen_basis(std::shared_ptr<const ConfigQuadrature> quad,
                                               int n_basis, int radial_dim = 0);

/// Coefficients of phi = psi / M in a ConfigBasis at one spatial point.
struct ConfDistribution {
  Eigen::VectorXd coeffs;
};

/// M-weighted orthogonal projection of node values of phi onto span(basis).
ConfDistribution project_pi_qn(const Eigen::VectorXd& node_values, const ConfigBasis& basis);
/// Node values of sum_i c_i phi_i.
Eigen::VectorXd to_node_values(const ConfDistribution& phi, const ConfigBasis& basis);

/// (int M |phi|^2 dq)^{1/2}.
double l2m_norm(const ConfDistribution& phi);
double l2m_norm(const ConfigQuadrature& quad, const Eigen::VectorXd& node_values);
/// (int M |grad phi|^2 dq)^{1/2} through the eigenvalues: (sum lambda_i c_i^2)^{1/2}.
double h1m_seminorm(const ConfDistribution& phi, const ConfigBasis& basis);
/// Same seminorm by quadrature of the gradients.
double h1m_seminorm_quadrature(const ConfDistribution& phi, const ConfigBasis& basis);
double h1m_seminorm(const ConfigQuadrature& quad,
                    const std::function<Vec2(const QuadNode&)>& grad_phi);

/// C^1 cut-off: 1 for |q| <= sqrt(b) - 2/n, 0 for |q| >= sqrt(b) - 1/n, cubic
/// smoothstep in between.
double chi_cutoff(double q_norm, double b, int n);
double chi_cutoff_derivative(double q_norm, double b, int n);
inline double chi_cutoff(const Vec2& q, double b, int n) { return chi_cutoff(q.norm(), b, n); }

/// Kramers stress int_B psi F(q) (x) q dq with psi = M phi.
Mat2 kramers_stress(const ConfDistribution& phi, const ConfigBasis& basis);
Mat2 kramers_stress(const ConfigQuadrature& quad, const Eigen::VectorXd& phi_node_values);

struct LemmaA1Terms {
  double lhs;      // (int |psi| / (1 - |q|/sqrt(b)) dq)^2
  double h1_term;  // delta * |psi|_{H^1_M}^2
  double l2_term;  // |psi|_{L^2_M}^2
};
LemmaA1Terms lemma_a1_check(const ConfDistribution& phi, const ConfigBasis& basis, double delta);

}  // namespace fene

#endif  // FENE_CONFIG_SPACE_HPP

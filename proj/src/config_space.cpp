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

#include "fene/config_space.hpp"

#include "fene/error.hpp"
#include "fene/jacobi.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <tuple>

namespace fene {

namespace {

constexpr double kPi = std::numbers::pi;

double angular_measure(int m) { return m == 0 ? 2.0 * kPi : kPi; }

// Radial factor of the raw basis: R(s) = N s^m P_k^{(b/2, m)}(2t - 1).
struct RadialEval {
  double r;          // R
  double dr;         // dR/d|q|
  double r_over_q;   // R / |q| (only meaningful for m >= 1)
};

double radial_normalization(int m, int k, double b) {
  const double beta = 0.5 * b;
  const double h = jacobi_norm_sq(k, beta, static_cast<double>(m));
  const double scale = (0.5 * b) * angular_measure(m) * std::pow(2.0, -beta - m - 1.0) * h /
                       maxwellian_normalizer(b);
  return 1.0 / std::sqrt(scale);
}

RadialEval radial_eval(int m, int k, double t, double b) {
  const double beta = 0.5 * b;
  const double x = 2.0 * t - 1.0;
  const double norm = radial_normalization(m, k, b);
  const double p = jacobi_p(k, beta, m, x);
  const double dp_dt = 2.0 * jacobi_p_derivative(k, beta, m, x);
  const double s = std::sqrt(t);
  const double sqrt_b = std::sqrt(b);
  RadialEval out{};
  if (m == 0) {
    out.r = norm * p;
    out.dr = norm * 2.0 * s * dp_dt / sqrt_b;
    out.r_over_q = 0.0;
  } else {
    const double s_m1 = std::pow(s, m - 1);
    out.r = norm * s_m1 * s * p;
    out.dr = norm * s_m1 * (m * p + 2.0 * t * dp_dt) / sqrt_b;
    out.r_over_q = norm * s_m1 * p / sqrt_b;
  }
  return out;
}

}  // namespace

ConfigQuadrature::ConfigQuadrature(double b, int n_radial, int n_angular)
    : b_(b), n_radial_(n_radial), n_angular_(n_angular) {
  if (!(b > 2.0)) throw DomainError("build_quadrature: requires b > 2");
  if (n_radial < 4) throw DomainError("build_quadrature: requires n_radial >= 4");
  if (n_angular < 8 || n_angular % 2 != 0) {
    throw DomainError("build_quadrature: requires n_angular >= 8 and even");
  }
  const double alpha = jacobi_exponent();
  const GaussRule gj = gauss_jacobi(n_radial, alpha, 0.0);
  const double jac_scale = std::pow(2.0, -alpha - 1.0);
  radial_t_.resize(n_radial);
  radial_w_.resize(n_radial);
  for (int j = 0; j < n_radial; ++j) {
    radial_t_[j] = 0.5 * (1.0 + gj.nodes[j]);
    radial_w_[j] = jac_scale * gj.weights[j];
  }
  const GaussRule gl = gauss_legendre(n_radial);

  const double dtheta = 2.0 * kPi / n_angular;
  const double area = 0.5 * b;
  const double z = maxwellian_normalizer(b);
  for (int j = 0; j < n_radial; ++j) {
    const double t = radial_t_[j];
    const double radius = std::sqrt(b * t);
    const double w = area * dtheta * radial_w_[j] * std::pow(1.0 - t, -alpha);
    const double m_val = std::pow(1.0 - t, 0.5 * b) / z;

    const double tp = 0.5 * (1.0 + gl.nodes[j]);
    const double rp = std::sqrt(b * tp);
    const double wp = area * dtheta * 0.5 * gl.weights[j];
    for (int a = 0; a < n_angular; ++a) {
      const double th = dtheta * a;
      const double c = std::cos(th);
      const double s = std::sin(th);
      nodes_.push_back(QuadNode{t, radius, th, Vec2(radius * c, radius * s)});
      weights_.push_back(w);
      maxwellian_.push_back(m_val);
      plain_nodes_.push_back(QuadNode{tp, rp, th, Vec2(rp * c, rp * s)});
      plain_weights_.push_back(wp);
    }
  }
}

double ConfigQuadrature::integrate(const std::function<double(const QuadNode&)>& g) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * g(nodes_[i]);
  return sum;
}

double ConfigQuadrature::integrate_plain(const std::function<double(const QuadNode&)>& g) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < plain_nodes_.size(); ++i) sum += plain_weights_[i] * g(plain_nodes_[i]);
  return sum;
}

std::shared_ptr<const ConfigQuadrature> build_quadrature(double b, int n_radial, int n_angular) {
  return std::make_shared<const ConfigQuadrature>(b, n_radial, n_angular);
}

int max_angular_mode(const ConfigQuadrature& quad) { return quad.n_angular() / 2 - 2; }

int default_radial_dim(const ConfigQuadrature& quad) { return std::max(2, quad.n_radial() / 2); }

RawBasisValue raw_basis(int m, int parity, int k, const Vec2& q, double b) {
  const double t = q.squaredNorm() / b;
  const double theta = std::atan2(q.y(), q.x());
  const RadialEval rad = radial_eval(m, k, t, b);
  const double c = std::cos(m * theta);
  const double s = std::sin(m * theta);
  const double trig = parity == 0 ? c : s;
  const double dtrig = parity == 0 ? -m * s : m * c;
  const Vec2 er(std::cos(theta), std::sin(theta));
  const Vec2 et(-er.y(), er.x());
  RawBasisValue out;
  out.value = rad.r * trig;
  out.gradient = rad.dr * trig * er + rad.r_over_q * dtrig * et;
  return out;
}

WeakOperator assemble_operator(const ConfigQuadrature& quad, int radial_dim) {
  const int dim = radial_dim > 0 ? radial_dim : default_radial_dim(quad);
  const int m_max = max_angular_mode(quad);
  const double b = quad.b();
  const double pref = 0.5 * b / maxwellian_normalizer(b);
  const auto& ts = quad.radial_nodes();
  const auto& ws = quad.radial_weights();
  WeakOperator op;
  op.radial_dim = dim;
  for (int m = 0; m <= m_max; ++m) {
    ModeBlock block;
    block.m = m;
    block.stiffness = Eigen::MatrixXd::Zero(dim, dim);
    block.mass = Eigen::MatrixXd::Zero(dim, dim);
    std::vector<RadialEval> ev(dim);
    for (std::size_t j = 0; j < ts.size(); ++j) {
      for (int k = 0; k < dim; ++k) ev[k] = radial_eval(m, k, ts[j], b);
      // remaining boundary factor (1 - t) on top of the folded (1 - t)^{b/2 - 1}
      const double w = pref * angular_measure(m) * ws[j] * (1.0 - ts[j]);
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l <= k; ++l) {
          const double a = ev[k].dr * ev[l].dr + m * m * ev[k].r_over_q * ev[l].r_over_q;
          block.stiffness(k, l) += w * a;
          block.mass(k, l) += w * ev[k].r * ev[l].r;
        }
    }
    block.stiffness = block.stiffness.selfadjointView<Eigen::Lower>();
    block.mass = block.mass.selfadjointView<Eigen::Lower>();
    op.blocks.push_back(std::move(block));
  }
  return op;
}

double weak_stiffness(const ConfigQuadrature& quad,
                      const std::function<Vec2(const QuadNode&)>& grad_f,
                      const std::function<Vec2(const QuadNode&)>& grad_g) {
  const auto& nodes = quad.nodes();
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    sum += quad.weights()[i] * quad.maxwellian_values()[i] * grad_f(nodes[i]).dot(grad_g(nodes[i]));
  }
  return sum;
}

ConfigBasis::ConfigBasis(std::shared_ptr<const ConfigQuadrature> quad, int n_basis, int radial_dim)
    : quad_(std::move(quad)) {
  const WeakOperator op = assemble_operator(*quad_, radial_dim);
  radial_dim_ = op.radial_dim;
  const int assembled = radial_dim_ * (2 * static_cast<int>(op.blocks.size()) - 1);
  if (n_basis < 1 || n_basis > assembled) {
    throw DomainError("eigen_basis: n_basis must lie in [1, " + std::to_string(assembled) + "]");
  }

  struct Candidate {
    double lambda;
    int m;
    int parity;
    int k;
    Eigen::VectorXd v;
    double residual;
  };
  std::vector<Candidate> all;
  for (const ModeBlock& block : op.blocks) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(block.stiffness, block.mass);
    if (ges.info() != Eigen::Success) {
      throw EigenSolverFailure("eigen_basis: generalized eigensolver failed for m=" +
                               std::to_string(block.m));
    }
    for (int k = 0; k < radial_dim_; ++k) {
      Eigen::VectorXd v = ges.eigenvectors().col(k);
      Eigen::Index imax = 0;
      v.cwiseAbs().maxCoeff(&imax);
      if (v(imax) < 0.0) v = -v;
      const double lambda = ges.eigenvalues()(k);
      const double res = (block.stiffness * v - lambda * block.mass * v).norm();
      for (int parity = 0; parity < (block.m == 0 ? 1 : 2); ++parity) {
        all.push_back(Candidate{lambda, block.m, parity, k, v, res});
      }
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const Candidate& x, const Candidate& y) {
    return std::tie(x.lambda, x.m, x.parity, x.k) < std::tie(y.lambda, y.m, y.parity, y.k);
  });

  std::ostringstream bad;
  double worst = 0.0;
  for (int i = 0; i < n_basis; ++i) {
    const Candidate& c = all[i];
    const double scale = std::max(1.0, std::abs(c.lambda));
    if (!(c.residual <= 1e-8 * scale)) bad << " (i=" << i << ", m=" << c.m << ", residual=" << c.residual << ")";
    worst = std::max(worst, c.residual);
    functions_.push_back(BasisFunction{c.m, c.parity, c.lambda, c.residual, c.v});
  }
  if (!bad.str().empty()) {
    throw EigenSolverFailure("eigen_basis: residual check failed:" + bad.str());
  }
  // The lowest mode is the constant function (psi = M): lambda_0 = 0.
  if (functions_.front().m != 0) {
    throw EigenSolverFailure("eigen_basis: lowest eigenpair is not rotation invariant");
  }

  const auto& nodes = quad_->nodes();
  const int nn = static_cast<int>(nodes.size());
  values_.resize(n_basis, nn);
  grad_x_.resize(n_basis, nn);
  grad_y_.resize(n_basis, nn);
  for (int i = 0; i < n_basis; ++i) {
    for (int n = 0; n < nn; ++n) {
      const double v = value(i, nodes[n].q);
      const Vec2 g = gradient(i, nodes[n].q);
      values_(i, n) = v;
      grad_x_(i, n) = g.x();
      grad_y_(i, n) = g.y();
    }
  }

  stress_.assign(n_basis, Mat2::Zero());
  const double b = quad_->b();
  for (int n = 0; n < nn; ++n) {
    const QuadNode& node = nodes[n];
    const double w = quad_->weights()[n] * quad_->maxwellian_values()[n] * b / (b - node.q.squaredNorm());
    const Mat2 qq = node.q * node.q.transpose();
    for (int i = 0; i < n_basis; ++i) stress_[i] += (w * values_(i, n)) * qq;
  }
  for (auto& s : stress_) s = 0.5 * (s + s.transpose()).eval();
}

std::vector<double> ConfigBasis::eigenvalues() const {
  std::vector<double> out;
  out.reserve(functions_.size());
  for (const auto& f : functions_) out.push_back(f.eigenvalue);
  return out;
}

double ConfigBasis::value(int i, const Vec2& q) const {
  const BasisFunction& f = functions_[i];
  double sum = 0.0;
  for (int k = 0; k < radial_dim_; ++k) {
    if (f.radial(k) == 0.0) continue;
    sum += f.radial(k) * raw_basis(f.m, f.parity, k, q, quad_->b()).value;
  }
  return sum;
}

Vec2 ConfigBasis::gradient(int i, const Vec2& q) const {
  const BasisFunction& f = functions_[i];
  Vec2 sum = Vec2::Zero();
  for (int k = 0; k < radial_dim_; ++k) {
    if (f.radial(k) == 0.0) continue;
    sum += f.radial(k) * raw_basis(f.m, f.parity, k, q, quad_->b()).gradient;
  }
  return sum;
}

double ConfigBasis::max_residual() const {
  double worst = 0.0;
  for (const auto& f : functions_) worst = std::max(worst, f.residual);
  return worst;
}

Eigen::MatrixXd ConfigBasis::gram() const {
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(quad_->weights().data(), quad_->size())
                                .cwiseProduct(Eigen::Map<const Eigen::VectorXd>(
                                    quad_->maxwellian_values().data(), quad_->size()));
  return values_ * w.asDiagonal() * values_.transpose();
}

std::shared_ptr<const ConfigBasis> eigen_basis(std::shared_ptr<const ConfigQuadrature> quad,
                                               int n_basis, int radial_dim) {
  return std::make_shared<const ConfigBasis>(std::move(quad), n_basis, radial_dim);
}

ConfDistribution project_pi_qn(const Eigen::VectorXd& node_values, const ConfigBasis& basis) {
  const ConfigQuadrature& quad = basis.quadrature();
  if (node_values.size() != quad.size()) throw SizeMismatch("project_pi_qn: node count mismatch");
  Eigen::VectorXd weighted(quad.size());
  for (int n = 0; n < quad.size(); ++n) {
    weighted(n) = quad.weights()[n] * quad.maxwellian_values()[n] * node_values(n);
  }
  return ConfDistribution{basis.node_values() * weighted};
}

Eigen::VectorXd to_node_values(const ConfDistribution& phi, const ConfigBasis& basis) {
  if (phi.coeffs.size() != basis.size()) throw SizeMismatch("to_node_values: basis size mismatch");
  return basis.node_values().transpose() * phi.coeffs;
}

double l2m_norm(const ConfDistribution& phi) { return phi.coeffs.norm(); }

double l2m_norm(const ConfigQuadrature& quad, const Eigen::VectorXd& node_values) {
  if (node_values.size() != quad.size()) throw SizeMismatch("l2m_norm: node count mismatch");
  double sum = 0.0;
  for (int n = 0; n < quad.size(); ++n) {
    sum += quad.weights()[n] * quad.maxwellian_values()[n] * node_values(n) * node_values(n);
  }
  return std::sqrt(sum);
}

double h1m_seminorm(const ConfDistribution& phi, const ConfigBasis& basis) {
  if (phi.coeffs.size() != basis.size()) throw SizeMismatch("h1m_seminorm: basis size mismatch");
  double sum = 0.0;
  for (int i = 0; i < basis.size(); ++i) sum += std::max(0.0, basis.eigenvalue(i)) * phi.coeffs(i) * phi.coeffs(i);
  return std::sqrt(sum);
}

double h1m_seminorm_quadrature(const ConfDistribution& phi, const ConfigBasis& basis) {
  if (phi.coeffs.size() != basis.size()) throw SizeMismatch("h1m_seminorm: basis size mismatch");
  const ConfigQuadrature& quad = basis.quadrature();
  const Eigen::VectorXd gx = basis.node_grad_x().transpose() * phi.coeffs;
  const Eigen::VectorXd gy = basis.node_grad_y().transpose() * phi.coeffs;
  double sum = 0.0;
  for (int n = 0; n < quad.size(); ++n) {
    sum += quad.weights()[n] * quad.maxwellian_values()[n] * (gx(n) * gx(n) + gy(n) * gy(n));
  }
  return std::sqrt(sum);
}

double h1m_seminorm(const ConfigQuadrature& quad,
                    const std::function<Vec2(const QuadNode&)>& grad_phi) {
  return std::sqrt(std::max(0.0, weak_stiffness(quad, grad_phi, grad_phi)));
}

double chi_cutoff(double q_norm, double b, int n) {
  const double outer = std::sqrt(b) - 1.0 / n;
  const double inner = std::sqrt(b) - 2.0 / n;
  if (q_norm <= inner) return 1.0;
  if (q_norm >= outer) return 0.0;
  const double s = (q_norm - inner) / (outer - inner);
  return 1.0 - s * s * (3.0 - 2.0 * s);
}

double chi_cutoff_derivative(double q_norm, double b, int n) {
  const double outer = std::sqrt(b) - 1.0 / n;
  const double inner = std::sqrt(b) - 2.0 / n;
  if (q_norm <= inner || q_norm >= outer) return 0.0;
  const double s = (q_norm - inner) / (outer - inner);
  return -6.0 * s * (1.0 - s) / (outer - inner);
}

Mat2 kramers_stress(const ConfDistribution& phi, const ConfigBasis& basis) {
  if (phi.coeffs.size() != basis.size()) throw SizeMismatch("kramers_stress: basis size mismatch");
  Mat2 out = Mat2::Zero();
  for (int i = 0; i < basis.size(); ++i) out += phi.coeffs(i) * basis.stress_of(i);
  return out;
}

Mat2 kramers_stress(const ConfigQuadrature& quad, const Eigen::VectorXd& phi_node_values) {
  if (phi_node_values.size() != quad.size()) throw SizeMismatch("kramers_stress: node count mismatch");
  Mat2 out = Mat2::Zero();
  const double b = quad.b();
  for (int n = 0; n < quad.size(); ++n) {
    const QuadNode& node = quad.nodes()[n];
    const double w = quad.weights()[n] * quad.maxwellian_values()[n] * phi_node_values(n) * b /
                     (b - node.q.squaredNorm());
    out += w * (node.q * node.q.transpose());
  }
  return 0.5 * (out + out.transpose());
}

LemmaA1Terms lemma_a1_check(const ConfDistribution& phi, const ConfigBasis& basis, double delta) {
  if (!(delta > 0.0)) throw DomainError("lemma_a1_check: delta must be > 0");
  const ConfigQuadrature& quad = basis.quadrature();
  const Eigen::VectorXd vals = to_node_values(phi, basis);
  const double sqrt_b = std::sqrt(quad.b());
  double integral = 0.0;
  for (int n = 0; n < quad.size(); ++n) {
    const QuadNode& node = quad.nodes()[n];
    integral += quad.weights()[n] * quad.maxwellian_values()[n] * std::abs(vals(n)) /
                (1.0 - node.radius / sqrt_b);
  }
  const double h1 = h1m_seminorm(phi, basis);
  const double l2 = l2m_norm(phi);
  return LemmaA1Terms{integral * integral, delta * h1 * h1, l2 * l2};
}

}  // namespace fene

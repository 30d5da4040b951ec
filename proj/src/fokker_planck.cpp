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

#include "fene/fokker_planck.hpp"

#include "fene/error.hpp"
#include "fene/fluid.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fene {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Coefficients truncated to the dealiasing cutoff, as grid values (nb x points).
RowMatrix coeffs_to_grid(const SpectralField& coeffs, int cutoff) {
  const TorusGrid& grid = coeffs.grid();
  const int nb = coeffs.components();
  RowMatrix out(nb, grid.size());
  SpectralField t = truncate(coeffs, cutoff);
  for (int i = 0; i < nb; ++i) {
    backward_scalar(grid, t.component(i), std::span<double>(out.row(i).data(), grid.size()));
  }
  return out;
}

void grid_to_coeffs(const RowMatrix& values, SpectralField& out, int cutoff) {
  const TorusGrid& grid = out.grid();
  for (int i = 0; i < out.components(); ++i) {
    forward_scalar(grid, std::span<const double>(values.row(i).data(), grid.size()),
                   out.component(i));
  }
  truncate_in_place(out, cutoff);
}

std::vector<double> scalar_on_grid(const SpectralField& f, int c) {
  std::vector<double> v(static_cast<std::size_t>(f.grid().size()));
  backward_scalar(f.grid(), f.component(c), v);
  return v;
}

void check_velocity(const PolymerField& psi, const SpectralField& u) {
  if (u.components() != 2 || !(u.grid() == psi.grid())) {
    throw SizeMismatch("fokker-planck: velocity must be a 2-vector on the polymer grid");
  }
}

void check_operator(const PolymerField& psi, const FPOperator& op) {
  if (psi.n_basis() != op.size()) {
    throw SizeMismatch("fokker-planck: polymer field and operator use different bases");
  }
}

}  // namespace

PolymerField equilibrium_polymer(const TorusGrid& grid, std::shared_ptr<const ConfigBasis> basis) {
  return make_polymer(grid, std::move(basis), [](int, double, double) { return 0.0; });
}

PolymerField make_polymer(const TorusGrid& grid, std::shared_ptr<const ConfigBasis> basis,
                          const std::function<double(int, double, double)>& coeff_of_x) {
  if (!basis) throw SizeMismatch("make_polymer: null basis");
  const int nb = basis->size();
  PolymerField psi{basis, from_function(grid, nb, coeff_of_x), 0.0, 0.0};
  // the constant mode phi_0 = 1 carries psi = M
  psi.coeffs(0, 0, 0) += 1.0;
  psi.initial_mass = polymer_mass(psi);
  return psi;
}

double polymer_mass(const PolymerField& psi) { return integral(psi.coeffs, 0); }

SpectralField marginal_density(const PolymerField& psi) { return psi.coeffs.extract(0); }

FPOperator::FPOperator(std::shared_ptr<const ConfigBasis> basis, const ModelParams& p,
                       int chi_index, ChiMode chi_mode)
    : basis_(std::move(basis)), kappa_(p.relaxation_rate()), chi_index_(chi_index),
      chi_mode_(chi_mode) {
  if (!basis_) throw SizeMismatch("FPOperator: null basis");
  if (chi_index < 1) throw DomainError("FPOperator: chi index must be >= 1");
  const ConfigQuadrature& quad = basis_->quadrature();
  const int nq = quad.size();
  const int nb = basis_->size();

  Eigen::VectorXd w(nq);
  for (int n = 0; n < nq; ++n) {
    const double chi = chi_mode == ChiMode::kOff ? 1.0 : chi_cutoff(quad.nodes()[n].radius, quad.b(), chi_index);
    w(n) = quad.weights()[n] * quad.maxwellian_values()[n] * chi;
  }
  const Eigen::MatrixXd& v = basis_->node_values();
  if (chi_mode == ChiMode::kBoth) {
    transport_ = v * w.asDiagonal() * v.transpose();
  } else {
    transport_ = Eigen::MatrixXd::Identity(nb, nb);
  }

  Eigen::VectorXd wq[2] = {Eigen::VectorXd(nq), Eigen::VectorXd(nq)};
  for (int n = 0; n < nq; ++n) {
    wq[0](n) = w(n) * quad.nodes()[n].q.x();
    wq[1](n) = w(n) * quad.nodes()[n].q.y();
  }
  const Eigen::MatrixXd* grads[2] = {&basis_->node_grad_x(), &basis_->node_grad_y()};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      drift_[2 * a + b] = (*grads[a]) * wq[b].asDiagonal() * v.transpose();
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(drift_[2 * a + b]);
      drift_norm_ = std::max(drift_norm_, svd.singularValues()(0));
    }
  stacked_.resize(nb, 4 * nb);
  for (int k = 0; k < 4; ++k) stacked_.middleCols(k * nb, nb) = drift_[k];

  relax_.resize(nb);
  for (int i = 0; i < nb; ++i) relax_(i) = kappa_ * std::max(0.0, basis_->eigenvalue(i));
  // phi_0 is the constant function; L annihilates it exactly.
  relax_(0) = 0.0;
}

SpectralField fp_explicit_rhs(const PolymerField& psi, const SpectralField& u,
                              const FPOperator& op) {
  check_velocity(psi, u);
  check_operator(psi, op);
  const TorusGrid& grid = psi.grid();
  const int K = grid.dealias_cutoff();
  const int nb = psi.n_basis();
  const int np = grid.size();

  const RowMatrix cg = coeffs_to_grid(psi.coeffs, K);
  const SpectralField ut = truncate(u, K);
  const std::vector<double> u1 = scalar_on_grid(ut, 0);
  const std::vector<double> u2 = scalar_on_grid(ut, 1);
  const SpectralField a1 = ut.extract(0);
  const SpectralField a2 = ut.extract(1);
  // grad_u[a][b] = d u_a / d x_b
  std::vector<double> grad_u[2][2] = {
      {scalar_on_grid(derivative(a1, {1, 0}), 0), scalar_on_grid(derivative(a1, {0, 1}), 0)},
      {scalar_on_grid(derivative(a2, {1, 0}), 0), scalar_on_grid(derivative(a2, {0, 1}), 0)}};

  const RowMatrix y = op.chi_mode() == ChiMode::kBoth ? RowMatrix(op.transport_matrix() * cg) : cg;
  const Eigen::Map<const Eigen::RowVectorXd> u1v(u1.data(), np);
  const Eigen::Map<const Eigen::RowVectorXd> u2v(u2.data(), np);
  RowMatrix flux1 = y.array().rowwise() * u1v.array();
  RowMatrix flux2 = y.array().rowwise() * u2v.array();

  // sum_ab G^{ab} (c * d_b u_a) as one product with the stacked drift matrices
  RowMatrix scaled(4 * nb, np);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const Eigen::Map<const Eigen::RowVectorXd> g(grad_u[a][b].data(), np);
      scaled.middleRows((2 * a + b) * nb, nb) = cg.array().rowwise() * g.array();
    }
  RowMatrix drift(nb, np);
  drift.noalias() = op.stacked_drift() * scaled;

  SpectralField f1(grid, nb);
  SpectralField f2(grid, nb);
  SpectralField out(grid, nb);
  grid_to_coeffs(flux1, f1, K);
  grid_to_coeffs(flux2, f2, K);
  grid_to_coeffs(drift, out, K);
  const int n = grid.n();
  for (int i = 0; i < nb; ++i)
    for (int j1 = 0; j1 < n; ++j1) {
      const double k1 = grid.wavenumber(j1);
      for (int j2 = 0; j2 < n; ++j2) {
        const double k2 = grid.wavenumber(j2);
        // -div: -(i k1 F1 + i k2 F2)
        const Complex s = k1 * f1(i, j1, j2) + k2 * f2(i, j1, j2);
        out(i, j1, j2) += Complex(s.imag(), -s.real());
      }
    }
  return out;
}

namespace {

void add_implicit_part(const PolymerField& psi, const FPOperator& op, double epsilon,
                       SpectralField& out) {
  const TorusGrid& grid = psi.grid();
  const int n = grid.n();
  for (int i = 0; i < psi.n_basis(); ++i) {
    const double rate = op.relaxation()(i);
    for (int j1 = 0; j1 < n; ++j1) {
      const double k1 = grid.wavenumber(j1);
      for (int j2 = 0; j2 < n; ++j2) {
        const double k2 = grid.wavenumber(j2);
        out(i, j1, j2) -= (rate + epsilon * (k1 * k1 + k2 * k2)) * psi.coeffs(i, j1, j2);
      }
    }
  }
}

}  // namespace

SpectralField fp_rhs(const PolymerField& psi, const SpectralField& u, const FPOperator& op,
                     const FPStepConfig& cfg) {
  SpectralField out = fp_explicit_rhs(psi, u, op);
  add_implicit_part(psi, op, cfg.epsilon, out);
  return out;
}

double fp_stability_bound(const SpectralField& u, const FPOperator& op, const FPStepConfig& cfg) {
  const TorusGrid& grid = u.grid();
  const int K = grid.dealias_cutoff();
  const std::vector<double> u1 = scalar_on_grid(u, 0);
  const std::vector<double> u2 = scalar_on_grid(u, 1);
  double umax = 0.0;
  for (std::size_t i = 0; i < u1.size(); ++i) umax = std::max(umax, std::abs(u1[i]) + std::abs(u2[i]));
  const double adv = umax * K + sup_norm_gradient(u) * op.drift_norm();
  if (cfg.scheme == FPScheme::kImexEuler) {
    return adv > 0.0 ? 1.0 / adv : std::numeric_limits<double>::infinity();
  }
  const double diff = op.relaxation().maxCoeff() + cfg.epsilon * 2.0 * K * K;
  double bound = std::numeric_limits<double>::infinity();
  if (adv > 0.0) bound = std::sqrt(3.0) / adv;
  if (diff > 0.0) bound = std::min(bound, 2.5 / diff);
  return bound;
}

PolymerField fp_step(const PolymerField& psi, const VelocityProvider& u, const FPOperator& op,
                     const FPStepConfig& cfg) {
  check_operator(psi, op);
  if (!(cfg.dt > 0.0)) throw DomainError("fp_step: dt must be > 0");
  if (cfg.epsilon < 0.0) throw DomainError("fp_step: epsilon must be >= 0");
  const double dt = cfg.dt;
  const double t0 = psi.time;
  const SpectralField u0 = u(t0);
  if (cfg.check_stability) {
    const double bound = fp_stability_bound(u0, op, cfg);
    if (dt > bound) {
      std::ostringstream msg;
      msg << "fp_step: dt = " << dt << " exceeds the stability bound " << bound;
      throw StabilityViolation(msg.str());
    }
  }

  PolymerField out = psi;
  out.time = t0 + dt;
  if (cfg.scheme == FPScheme::kImexEuler) {
    out.coeffs.axpy(dt, fp_explicit_rhs(psi, u0, op));
    const TorusGrid& grid = psi.grid();
    const int n = grid.n();
    for (int i = 0; i < psi.n_basis(); ++i) {
      const double rate = op.relaxation()(i);
      for (int j1 = 0; j1 < n; ++j1) {
        const double k1 = grid.wavenumber(j1);
        for (int j2 = 0; j2 < n; ++j2) {
          const double k2 = grid.wavenumber(j2);
          out.coeffs(i, j1, j2) /= 1.0 + dt * (rate + cfg.epsilon * (k1 * k1 + k2 * k2));
        }
      }
    }
    return out;
  }

  PolymerField s1 = psi;
  s1.coeffs.axpy(dt, fp_rhs(psi, u0, op, cfg));
  s1.time = t0 + dt;
  PolymerField s2 = psi;
  s2.coeffs *= 0.75;
  s1.coeffs.axpy(dt, fp_rhs(s1, u(t0 + dt), op, cfg));
  s2.coeffs.axpy(0.25, s1.coeffs);
  s2.time = t0 + 0.5 * dt;
  s2.coeffs.axpy(dt, fp_rhs(s2, u(t0 + 0.5 * dt), op, cfg));
  out.coeffs *= 1.0 / 3.0;
  out.coeffs.axpy(2.0 / 3.0, s2.coeffs);
  return out;
}

PolymerField fp_step(const PolymerField& psi, const SpectralField& u, const FPOperator& op,
                     const FPStepConfig& cfg) {
  return fp_step(psi, VelocityProvider([&u](double) { return u; }), op, cfg);
}

FPEnergy fp_energy(const PolymerField& psi, int s) {
  if (s < 0) throw DomainError("fp_energy: s must be >= 0");
  const TorusGrid& grid = psi.grid();
  const int n = grid.n();
  std::vector<double> weight(static_cast<std::size_t>(grid.size()));
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = 0; j2 < n; ++j2) {
      const double k1 = grid.wavenumber(j1);
      const double k2 = grid.wavenumber(j2);
      weight[static_cast<std::size_t>(j1) * n + j2] = std::pow(1.0 + k1 * k1 + k2 * k2, s);
    }
  FPEnergy e{0.0, 0.0};
  for (int i = 0; i < psi.n_basis(); ++i) {
    auto c = psi.coeffs.component(i);
    double sum = 0.0;
    for (std::size_t m = 0; m < c.size(); ++m) sum += weight[m] * std::norm(c[m]);
    e.l2m += sum;
    e.h1m += std::max(0.0, psi.basis->eigenvalue(i)) * sum;
  }
  const double area = kTwoPi * kTwoPi;
  e.l2m *= area;
  e.h1m *= area;
  return e;
}

FPEnergy fp_energy_quadrature(const PolymerField& psi, int s) {
  if (s < 0) throw DomainError("fp_energy: s must be >= 0");
  const TorusGrid& grid = psi.grid();
  const ConfigBasis& basis = *psi.basis;
  const ConfigQuadrature& quad = basis.quadrature();
  const int nb = psi.n_basis();
  const int nk = grid.size();
  const int n = grid.n();

  Eigen::MatrixXd re(nb, nk);
  Eigen::MatrixXd im(nb, nk);
  for (int i = 0; i < nb; ++i) {
    auto c = psi.coeffs.component(i);
    for (int m = 0; m < nk; ++m) {
      re(i, m) = c[m].real();
      im(i, m) = c[m].imag();
    }
  }
  Eigen::VectorXd wm(quad.size());
  for (int q = 0; q < quad.size(); ++q) wm(q) = quad.weights()[q] * quad.maxwellian_values()[q];

  auto weighted_sq = [&](const Eigen::MatrixXd& nodes_by_basis) {
    const Eigen::MatrixXd a = nodes_by_basis.transpose() * re;
    const Eigen::MatrixXd b = nodes_by_basis.transpose() * im;
    // per torus mode: int M |.|^2 dq
    return Eigen::VectorXd((a.array().square() + b.array().square()).matrix().transpose() * wm);
  };
  const Eigen::VectorXd l2 = weighted_sq(basis.node_values());
  const Eigen::VectorXd h1 = weighted_sq(basis.node_grad_x()) + weighted_sq(basis.node_grad_y());

  FPEnergy e{0.0, 0.0};
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = 0; j2 < n; ++j2) {
      const double k1 = grid.wavenumber(j1);
      const double k2 = grid.wavenumber(j2);
      const double w = std::pow(1.0 + k1 * k1 + k2 * k2, s);
      const int m = j1 * n + j2;
      e.l2m += w * l2(m);
      e.h1m += w * h1(m);
    }
  const double area = kTwoPi * kTwoPi;
  e.l2m *= area;
  e.h1m *= area;
  return e;
}

NonnegativityReport nonnegativity_report(const PolymerField& psi) {
  const ConfigBasis& basis = *psi.basis;
  const ConfigQuadrature& quad = basis.quadrature();
  const RowMatrix cg = coeffs_to_grid(psi.coeffs, psi.grid().n() / 2);
  const Eigen::MatrixXd phi = basis.node_values().transpose() * cg;
  double min_psi = std::numeric_limits<double>::infinity();
  long negative = 0;
  for (Eigen::Index q = 0; q < phi.rows(); ++q) {
    const double m = quad.maxwellian_values()[q];
    for (Eigen::Index x = 0; x < phi.cols(); ++x) {
      const double v = m * phi(q, x);
      min_psi = std::min(min_psi, v);
      if (v < 0.0) ++negative;
    }
  }
  return NonnegativityReport{min_psi, static_cast<double>(negative) / static_cast<double>(phi.size())};
}

SpectralField stress_field(const SpectralField& coeffs, const ConfigBasis& basis) {
  if (coeffs.components() != basis.size()) throw SizeMismatch("stress_field: basis size mismatch");
  const TorusGrid& grid = coeffs.grid();
  SpectralField t(grid, kTensorComponents);
  const int nk = grid.size();
  for (int i = 0; i < basis.size(); ++i) {
    const Mat2& s = basis.stress_of(i);
    const double entries[3] = {s(0, 0), s(0, 1), s(1, 1)};
    auto c = coeffs.component(i);
    for (int comp = 0; comp < kTensorComponents; ++comp) {
      if (entries[comp] == 0.0) continue;
      auto dst = t.component(comp);
      for (int m = 0; m < nk; ++m) dst[m] += entries[comp] * c[m];
    }
  }
  return t;
}

SpectralField stress_field(const PolymerField& psi) { return stress_field(psi.coeffs, *psi.basis); }

}  // namespace fene

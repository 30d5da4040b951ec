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

#include "fene/spectral.hpp"

#include "fene/error.hpp"
#include "fene/model.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace fene {

namespace {

// FFTW planning is not thread safe; execution through the new-array interface
// is. Plans are created once per grid size and never destroyed.
struct FftPlans {
  fftw_plan fwd;
  fftw_plan bwd;
};

const FftPlans& plans_for(int n) {
  static std::mutex mutex;
  static std::map<int, FftPlans> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const auto total = static_cast<std::size_t>(n) * n;
  auto* in = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
  auto* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  FftPlans p{fftw_plan_dft_2d(n, n, in, out, FFTW_FORWARD, flags),
             fftw_plan_dft_2d(n, n, in, out, FFTW_BACKWARD, flags)};
  fftw_free(in);
  fftw_free(out);
  if (p.fwd == nullptr || p.bwd == nullptr) {
    throw Error(ErrorCode::kInternal, "FFTW planning failed for n=" + std::to_string(n));
  }
  return cache.emplace(n, p).first->second;
}

std::vector<Complex>& scratch(std::size_t size) {
  thread_local std::vector<Complex> buffer;
  if (buffer.size() < size) buffer.resize(size);
  return buffer;
}

std::vector<Complex>& scratch2(std::size_t size) {
  thread_local std::vector<Complex> buffer;
  if (buffer.size() < size) buffer.resize(size);
  return buffer;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

void symmetrize(std::span<Complex> c, const TorusGrid& g) {
  const int n = g.n();
  for (int j1 = 0; j1 < n; ++j1) {
    const int m1 = g.mirror(j1);
    for (int j2 = 0; j2 < n; ++j2) {
      const int m2 = g.mirror(j2);
      const auto a = static_cast<std::size_t>(j1) * n + j2;
      const auto b = static_cast<std::size_t>(m1) * n + m2;
      if (b < a) continue;
      const Complex avg = 0.5 * (c[a] + std::conj(c[b]));
      c[a] = avg;
      c[b] = std::conj(avg);
    }
  }
}

}  // namespace

TorusGrid::TorusGrid(int n_points) : n_(n_points) {
  if (n_points < 8 || n_points % 2 != 0) {
    throw DomainError("TorusGrid: n_points must be even and >= 8 (got " +
                      std::to_string(n_points) + ")");
  }
}

double TorusGrid::side() const noexcept { return kTwoPi; }
double TorusGrid::spacing() const noexcept { return kTwoPi / n_; }
double TorusGrid::coordinate(int i) const noexcept { return kTwoPi * i / n_; }

GridValues::GridValues(const TorusGrid& g, int comps)
    : grid(g), components(comps), values(static_cast<std::size_t>(comps) * g.size(), 0.0) {}

SpectralField::SpectralField(const TorusGrid& grid, int components)
    : grid_(grid), components_(components),
      coeffs_(static_cast<std::size_t>(components) * grid.size(), Complex(0.0, 0.0)) {
  if (components < 1) throw SizeMismatch("SpectralField: need at least one component");
}

SpectralField SpectralField::extract(int c) const {
  SpectralField out(grid_, 1);
  auto src = component(c);
  std::copy(src.begin(), src.end(), out.coeffs_.begin());
  return out;
}

void SpectralField::assign_component(int c, const SpectralField& scalar) {
  if (!(scalar.grid_ == grid_) || scalar.components_ != 1) {
    throw SizeMismatch("assign_component: expected a scalar field on the same grid");
  }
  std::copy(scalar.coeffs_.begin(), scalar.coeffs_.end(), component(c).begin());
}

void SpectralField::enforce_hermitian() {
  for (int c = 0; c < components_; ++c) symmetrize(component(c), grid_);
}

double SpectralField::hermitian_defect() const {
  const int n = grid_.n();
  double worst = 0.0;
  for (int c = 0; c < components_; ++c)
    for (int j1 = 0; j1 < n; ++j1)
      for (int j2 = 0; j2 < n; ++j2) {
        const Complex d = (*this)(c, j1, j2) - std::conj((*this)(c, grid_.mirror(j1), grid_.mirror(j2)));
        worst = std::max(worst, std::abs(d));
      }
  return worst;
}

void SpectralField::check_compatible(const SpectralField& other) const {
  if (!(other.grid_ == grid_) || other.components_ != components_) {
    throw SizeMismatch("SpectralField: grid or component mismatch");
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralField& SpectralField::axpy(double s, const SpectralField& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * other.coeffs_[i];
  return *this;
}

void forward_scalar(const TorusGrid& grid, std::span<const double> values,
                    std::span<Complex> coeffs) {
  const auto total = static_cast<std::size_t>(grid.size());
  if (values.size() != total || coeffs.size() != total) {
    throw SizeMismatch("forward: size mismatch");
  }
  auto& in = scratch(total);
  for (std::size_t i = 0; i < total; ++i) in[i] = Complex(values[i], 0.0);
  fftw_execute_dft(plans_for(grid.n()).fwd, as_fftw(in.data()), as_fftw(coeffs.data()));
  const double scale = 1.0 / static_cast<double>(total);
  for (auto& c : coeffs) c *= scale;
  symmetrize(coeffs, grid);
}

void backward_scalar(const TorusGrid& grid, std::span<const Complex> coeffs,
                     std::span<double> values) {
  const auto total = static_cast<std::size_t>(grid.size());
  if (values.size() != total || coeffs.size() != total) {
    throw SizeMismatch("backward: size mismatch");
  }
  auto& in = scratch(total);
  auto& out = scratch2(total);
  std::copy(coeffs.begin(), coeffs.end(), in.begin());
  fftw_execute_dft(plans_for(grid.n()).bwd, as_fftw(in.data()), as_fftw(out.data()));
  for (std::size_t i = 0; i < total; ++i) values[i] = out[i].real();
}

SpectralField forward(const GridValues& values) {
  SpectralField out(values.grid, values.components);
  for (int c = 0; c < values.components; ++c) {
    forward_scalar(values.grid, values.component(c), out.component(c));
  }
  return out;
}

GridValues backward(const SpectralField& field) {
  GridValues out(field.grid(), field.components());
  for (int c = 0; c < field.components(); ++c) {
    backward_scalar(field.grid(), field.component(c), out.component(c));
  }
  return out;
}

SpectralField from_function(const TorusGrid& grid, int components,
                            const std::function<double(int, double, double)>& fn) {
  GridValues v(grid, components);
  for (int c = 0; c < components; ++c)
    for (int i1 = 0; i1 < grid.n(); ++i1)
      for (int i2 = 0; i2 < grid.n(); ++i2)
        v.at(c, i1, i2) = fn(c, grid.coordinate(i1), grid.coordinate(i2));
  return forward(v);
}

SpectralField derivative(const SpectralField& f, MultiIndex alpha) {
  const TorusGrid& g = f.grid();
  const int n = g.n();
  const int order = alpha[0] + alpha[1];
  SpectralField out(g, f.components());
  // i^order as an exact rotation
  const int rot = order % 4;
  auto axis_factor = [&](int j, int power) -> double {
    if (power == 0) return 1.0;
    const int k = g.wavenumber(j);
    if ((power % 2 == 1) && j == n / 2) return 0.0;
    double m = 1.0;
    for (int p = 0; p < power; ++p) m *= k;
    return m;
  };
  for (int c = 0; c < f.components(); ++c)
    for (int j1 = 0; j1 < n; ++j1) {
      const double f1 = axis_factor(j1, alpha[0]);
      for (int j2 = 0; j2 < n; ++j2) {
        const double m = f1 * axis_factor(j2, alpha[1]);
        const Complex v = m * f(c, j1, j2);
        Complex r;
        switch (rot) {
          case 0: r = v; break;
          case 1: r = Complex(-v.imag(), v.real()); break;
          case 2: r = -v; break;
          default: r = Complex(v.imag(), -v.real()); break;
        }
        out(c, j1, j2) = r;
      }
    }
  return out;
}

SpectralField laplacian(const SpectralField& f) {
  const TorusGrid& g = f.grid();
  SpectralField out(g, f.components());
  for (int c = 0; c < f.components(); ++c)
    for (int j1 = 0; j1 < g.n(); ++j1)
      for (int j2 = 0; j2 < g.n(); ++j2) {
        const double k1 = g.wavenumber(j1);
        const double k2 = g.wavenumber(j2);
        out(c, j1, j2) = -(k1 * k1 + k2 * k2) * f(c, j1, j2);
      }
  return out;
}

void truncate_in_place(SpectralField& f, int cutoff) {
  const TorusGrid& g = f.grid();
  for (int c = 0; c < f.components(); ++c)
    for (int j1 = 0; j1 < g.n(); ++j1) {
      const bool drop1 = std::abs(g.wavenumber(j1)) > cutoff;
      for (int j2 = 0; j2 < g.n(); ++j2) {
        if (drop1 || std::abs(g.wavenumber(j2)) > cutoff) f(c, j1, j2) = 0.0;
      }
    }
}

SpectralField truncate(const SpectralField& f, int cutoff) {
  SpectralField out = f;
  truncate_in_place(out, cutoff);
  return out;
}

SpectralField dealiased_product(const SpectralField& f, const SpectralField& g) {
  if (!(f.grid() == g.grid())) throw SizeMismatch("dealiased_product: grid mismatch");
  const bool broadcast = f.components() == 1;
  if (!broadcast && f.components() != g.components()) {
    throw SizeMismatch("dealiased_product: component mismatch");
  }
  const TorusGrid& grid = f.grid();
  const int cutoff = grid.dealias_cutoff();
  const GridValues fv = backward(truncate(f, cutoff));
  const GridValues gv = backward(truncate(g, cutoff));
  GridValues prod(grid, g.components());
  for (int c = 0; c < g.components(); ++c) {
    auto a = fv.component(broadcast ? 0 : c);
    auto b = gv.component(c);
    auto out = prod.component(c);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
  }
  SpectralField result = forward(prod);
  truncate_in_place(result, cutoff);
  return result;
}

double sobolev_norm_sq(const SpectralField& f, int s) {
  if (s < 0) throw DomainError("sobolev_norm: s must be >= 0");
  const TorusGrid& g = f.grid();
  double sum = 0.0;
  for (int c = 0; c < f.components(); ++c)
    for (int j1 = 0; j1 < g.n(); ++j1)
      for (int j2 = 0; j2 < g.n(); ++j2) {
        const double k1 = g.wavenumber(j1);
        const double k2 = g.wavenumber(j2);
        const double w = std::pow(1.0 + k1 * k1 + k2 * k2, s);
        sum += w * std::norm(f(c, j1, j2));
      }
  return sum * kTwoPi * kTwoPi;
}

double sobolev_norm(const SpectralField& f, int s) { return std::sqrt(sobolev_norm_sq(f, s)); }

SpectralField project_pn(const SpectralField& f, int n_modes) {
  if (n_modes < 0 || n_modes > f.grid().n() / 2) {
    throw DomainError("project_pn: n_modes must lie in [0, n/2]");
  }
  return truncate(f, n_modes);
}

double inner_product(const SpectralField& f, const SpectralField& g) {
  if (!(f.grid() == g.grid()) || f.components() != g.components()) {
    throw SizeMismatch("inner_product: mismatch");
  }
  double sum = 0.0;
  auto a = f.data();
  auto b = g.data();
  for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] * std::conj(b[i])).real();
  return sum * kTwoPi * kTwoPi;
}

double integral(const SpectralField& f, int c) { return f.mean(c) * kTwoPi * kTwoPi; }

double sup_norm_w2inf(const SpectralField& u) {
  static constexpr MultiIndex kAlphas[] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  const TorusGrid& g = u.grid();
  std::vector<double> acc(static_cast<std::size_t>(g.size()), 0.0);
  for (const auto& alpha : kAlphas) {
    const GridValues v = backward(derivative(u, alpha));
    for (int c = 0; c < u.components(); ++c) {
      auto comp = v.component(c);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += std::abs(comp[i]);
    }
  }
  return *std::max_element(acc.begin(), acc.end());
}

double sup_norm_gradient(const SpectralField& u) {
  const TorusGrid& g = u.grid();
  std::vector<double> acc(static_cast<std::size_t>(g.size()), 0.0);
  for (const MultiIndex alpha : {MultiIndex{1, 0}, MultiIndex{0, 1}}) {
    const GridValues v = backward(derivative(u, alpha));
    for (int c = 0; c < u.components(); ++c) {
      auto comp = v.component(c);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += std::abs(comp[i]);
    }
  }
  return *std::max_element(acc.begin(), acc.end());
}

double grid_max(const SpectralField& f, int c) {
  std::vector<double> v(static_cast<std::size_t>(f.grid().size()));
  backward_scalar(f.grid(), f.component(c), v);
  return *std::max_element(v.begin(), v.end());
}

double grid_min(const SpectralField& f, int c) {
  std::vector<double> v(static_cast<std::size_t>(f.grid().size()));
  backward_scalar(f.grid(), f.component(c), v);
  return *std::min_element(v.begin(), v.end());
}

}  // namespace fene

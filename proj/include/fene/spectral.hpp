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

// Fourier representation of real fields on the flat 2-torus [0, 2 pi)^2.
//
// A field is stored as the full n x n array of complex coefficients c_k with
//   v(x) = sum_k c_k exp(i k.x),   k in {-n/2+1, ..., n/2}^2,
// so c_0 is the mean value. Real-valuedness is kept as exact Hermitian
// symmetry c_{-k} = conj(c_k); every operation that can break it bitwise
// (forward transforms) re-symmetrizes its output.

#ifndef FENE_SPECTRAL_HPP
#define FENE_SPECTRAL_HPP

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace fene {

using Complex = std::complex<double>;

class TorusGrid {
 public:
  /// n must be even and at least 8.
  explicit TorusGrid(int n_points);

  int n() const noexcept { return n_; }
  int size() const noexcept { return n_ * n_; }
  double side() const noexcept;
  double spacing() const noexcept;
  double coordinate(int i) const noexcept;
  /// Signed wave number of storage index j: j for j <= n/2, j - n otherwise.
  int wavenumber(int j) const noexcept { return j <= n_ / 2 ? j : j - n_; }
  /// Storage index of -k for the index j of k.
  int mirror(int j) const noexcept { return j == 0 ? 0 : n_ - j; }
  /// Largest |k| kept by the 2/3 dealiasing rule.
  int dealias_cutoff() const noexcept { return n_ / 3; }

  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;

 private:
  int n_;
};

/// Point values of a (possibly multi-component) real field, laid out as
/// (component, i1, i2) with x1 = coordinate(i1), x2 = coordinate(i2).
struct GridValues {
  GridValues(const TorusGrid& g, int components);

  TorusGrid grid;
  int components;
  std::vector<double> values;

  double& at(int c, int i1, int i2) {
    return values[(static_cast<std::size_t>(c) * grid.n() + i1) * grid.n() + i2];
  }
  double at(int c, int i1, int i2) const {
    return values[(static_cast<std::size_t>(c) * grid.n() + i1) * grid.n() + i2];
  }
  std::span<double> component(int c) {
    return {values.data() + static_cast<std::size_t>(c) * grid.size(),
            static_cast<std::size_t>(grid.size())};
  }
  std::span<const double> component(int c) const {
    return {values.data() + static_cast<std::size_t>(c) * grid.size(),
            static_cast<std::size_t>(grid.size())};
  }
};

class SpectralField {
 public:
  SpectralField(const TorusGrid& grid, int components);

  const TorusGrid& grid() const noexcept { return grid_; }
  int components() const noexcept { return components_; }

  Complex& operator()(int c, int j1, int j2) { return coeffs_[index(c, j1, j2)]; }
  Complex operator()(int c, int j1, int j2) const { return coeffs_[index(c, j1, j2)]; }

  std::span<Complex> component(int c) {
    return {coeffs_.data() + static_cast<std::size_t>(c) * grid_.size(),
            static_cast<std::size_t>(grid_.size())};
  }
  std::span<const Complex> component(int c) const {
    return {coeffs_.data() + static_cast<std::size_t>(c) * grid_.size(),
            static_cast<std::size_t>(grid_.size())};
  }
  std::span<Complex> data() { return coeffs_; }
  std::span<const Complex> data() const { return coeffs_; }

  /// Extracts component c as a scalar field.
  SpectralField extract(int c) const;
  void assign_component(int c, const SpectralField& scalar);

  /// c_k <- (c_k + conj(c_{-k})) / 2 for every k.
  void enforce_hermitian();
  /// Largest |c_k - conj(c_{-k})| over all coefficients.
  double hermitian_defect() const;

  /// Mean value of component c, i.e. Re c_0.
  double mean(int c = 0) const { return coeffs_[index(c, 0, 0)].real(); }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);
  /// this += s * other
  SpectralField& axpy(double s, const SpectralField& other);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  friend bool operator==(const SpectralField&, const SpectralField&) = default;

 private:
  std::size_t index(int c, int j1, int j2) const {
    return (static_cast<std::size_t>(c) * grid_.n() + j1) * grid_.n() + j2;
  }
  void check_compatible(const SpectralField& other) const;

  TorusGrid grid_;
  int components_;
  std::vector<Complex> coeffs_;
};

SpectralField forward(const GridValues& values);
GridValues backward(const SpectralField& field);

/// Raw scalar transforms used by the hot loops. `values` holds n*n reals.
void forward_scalar(const TorusGrid& grid, std::span<const double> values,
                    std::span<Complex> coeffs);
void backward_scalar(const TorusGrid& grid, std::span<const Complex> coeffs,
                     std::span<double> values);

/// Samples fn(c, x1, x2) on the grid and transforms it.
SpectralField from_function(const TorusGrid& grid, int components,
                            const std::function<double(int, double, double)>& fn);

using MultiIndex = std::array<int, 2>;

/// Multiplies every coefficient by (i k)^alpha. Odd derivatives annihilate the
/// Nyquist mode of the corresponding axis so the result stays real.
SpectralField derivative(const SpectralField& f, MultiIndex alpha);
SpectralField laplacian(const SpectralField& f);

/// Zeroes every coefficient with max(|k1|, |k2|) > cutoff.
SpectralField truncate(const SpectralField& f, int cutoff);
void truncate_in_place(SpectralField& f, int cutoff);

/// Product f * g with the 2/3 rule: both factors and the result are truncated
/// to max(|k|) <= n/3. Either f is scalar (broadcast over the components of g)
/// or both have the same number of components (component-wise product).
SpectralField dealiased_product(const SpectralField& f, const SpectralField& g);

/// Bessel-potential norm (sum_k (1 + |k|^2)^s |c_k|^2 (2 pi)^2)^{1/2}, summed
/// over components.
double sobolev_norm(const SpectralField& f, int s);
double sobolev_norm_sq(const SpectralField& f, int s);

/// Galerkin projection onto the trigonometric modes with max(|k1|,|k2|) <= n_modes.
SpectralField project_pn(const SpectralField& f, int n_modes);

/// L^2(torus) inner product int f.g dx, summed over components.
double inner_product(const SpectralField& f, const SpectralField& g);
/// int f_c dx for component c.
double integral(const SpectralField& f, int c = 0);

/// Grid-sampled W^{2,inf} norm: max over grid points of sum_{|alpha|<=2} sum_c |d^alpha f_c|.
double sup_norm_w2inf(const SpectralField& u);
/// Grid-sampled max over points of sum_{i,j} |d_j u_i|.
double sup_norm_gradient(const SpectralField& u);
/// Max and min over grid points of a scalar field.
double grid_max(const SpectralField& f, int c = 0);
double grid_min(const SpectralField& f, int c = 0);

}  // namespace fene

#endif  // FENE_SPECTRAL_HPP

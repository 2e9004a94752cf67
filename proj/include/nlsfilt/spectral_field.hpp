#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nlsfilt/torus_grid.hpp"

namespace nlsfilt {

using Complex = std::complex<double>;

// Fourier coefficients of a function on the torus.
//
// Normalization: u(x) = sum_k c_k exp(i<k,x>) on [0, 2*pi)^d, so the
// coefficients are c = DFT(u)/N^d and ||u||_{L2} = (2*pi)^{d/2} ||c||_{l2}.
// Every norm in the library goes through l2_norm() below.
class SpectralField {
 public:
  explicit SpectralField(TorusGrid grid);
  // Throws ConfigError when coeffs.size() != grid.size().
  SpectralField(TorusGrid grid, std::vector<Complex> coeffs);

  const TorusGrid& grid() const { return grid_; }
  std::span<Complex> coeffs() { return coeffs_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::vector<Complex>& data() { return coeffs_; }

  Complex& at(std::span<const int> k) { return coeffs_[grid_.flat_index(k)]; }
  const Complex& at(std::span<const int> k) const { return coeffs_[grid_.flat_index(k)]; }

  SpectralField& operator*=(Complex a);
  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);

  bool operator==(const SpectralField&) const = default;

 private:
  TorusGrid grid_;
  std::vector<Complex> coeffs_;
};

SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(Complex a, SpectralField f);

// sum_k |c_k|^2 in canonical order.
double coefficient_energy(std::span<const Complex> coeffs);

// L2(T^d) norm from coefficients.
double l2_norm(const SpectralField& f);
// L2(T^d) norm from grid values: ((2*pi/N)^d sum_j |u_j|^2)^{1/2}.
double l2_norm_physical(std::span<const Complex> values, const TorusGrid& grid);

std::vector<Complex> to_physical(const SpectralField& f);
// Throws ConfigError on size mismatch.
SpectralField to_spectral(std::span<const Complex> values, const TorusGrid& grid);

}  // namespace nlsfilt

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "nlsfilt/spectral_field.hpp"

namespace nlsfilt::testing {

inline SpectralField random_field(const TorusGrid& grid, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SpectralField f(grid);
  for (auto& c : f.coeffs()) c = scale * Complex(u(rng), u(rng));
  return f;
}

// Grid point j on [0, 2*pi)^d in canonical row-major order.
inline std::vector<double> grid_point(const TorusGrid& grid, std::size_t flat) {
  std::vector<double> x(static_cast<std::size_t>(grid.dim()));
  for (int a = grid.dim() - 1; a >= 0; --a) {
    x[static_cast<std::size_t>(a)] = 2.0 * std::numbers::pi * static_cast<double>(flat % grid.n()) / grid.n();
    flat /= static_cast<std::size_t>(grid.n());
  }
  return x;
}

// c_k = N^-d sum_j u_j exp(-i<k, x_j>), evaluated term by term.
inline std::vector<Complex> direct_dft(const std::vector<Complex>& values, const TorusGrid& grid) {
  std::vector<Complex> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Mode k = grid.mode(i);
    Complex sum{};
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const auto x = grid_point(grid, j);
      double phase = 0.0;
      for (int a = 0; a < grid.dim(); ++a) phase += k[static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(a)];
      sum += values[j] * std::polar(1.0, -phase);
    }
    out[i] = sum / static_cast<double>(grid.size());
  }
  return out;
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double relative_l2(const SpectralField& a, const SpectralField& b) {
  return l2_norm(a - b) / l2_norm(b);
}

}  // namespace nlsfilt::testing

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>

namespace nlsfilt {

inline constexpr int kMaxDim = 5;

// Lattice point k in Z^d; entries past dim() are zero.
using Mode = std::array<int, kMaxDim>;

// Uniform grid on the torus [0, 2*pi)^d with N points per axis.
//
// Frequency lattice is {-N/2, ..., N/2-1}^d. Coefficients are stored in a
// flat row-major array over the per-axis FFT order: axis index i maps to
// frequency i for i < N/2 and to i - N otherwise. The last axis varies
// fastest. Use frequency()/axis_index()/mode()/flat_index() to address modes.
class TorusGrid {
 public:
  // Throws ConfigError unless 1 <= dim <= 5, N >= 2 is a power of two and
  // N^dim complex values are addressable.
  TorusGrid(int dim, int n_per_axis);

  int dim() const { return dim_; }
  int n() const { return n_; }
  std::size_t size() const { return size_; }

  int frequency(int axis_index) const { return axis_index < n_ / 2 ? axis_index : axis_index - n_; }
  int axis_index(int k) const { return k >= 0 ? k : k + n_; }

  bool contains(std::span<const int> k) const;
  Mode mode(std::size_t flat) const;
  // Throws ConfigError if k has the wrong rank or lies outside the lattice.
  std::size_t flat_index(std::span<const int> k) const;

  // (2*pi)^d, the measure of the torus.
  double volume() const;

  bool operator==(const TorusGrid&) const = default;

 private:
  int dim_;
  int n_;
  std::size_t size_;
};

TorusGrid make_grid(int dim, int n_per_axis);

// Calls f(flat_index, mode) for every lattice point in canonical order.
template <typename F>
void for_each_mode(const TorusGrid& grid, F&& f) {
  const int d = grid.dim();
  const int n = grid.n();
  std::array<int, kMaxDim> idx{};
  Mode k{};
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    f(flat, static_cast<const Mode&>(k));
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < n) {
        k[a] = grid.frequency(idx[a]);
        break;
      }
      idx[a] = 0;
      k[a] = 0;
    }
  }
}

inline int max_abs(const Mode& k) {
  int m = 0;
  for (int v : k) m = std::max(m, v < 0 ? -v : v);
  return m;
}

inline long long norm_sq(const Mode& k) {
  long long r = 0;
  for (int v : k) r += static_cast<long long>(v) * v;
  return r;
}

}  // namespace nlsfilt

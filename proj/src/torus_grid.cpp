#include "nlsfilt/torus_grid.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "nlsfilt/errors.hpp"

namespace nlsfilt {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

TorusGrid::TorusGrid(int dim, int n_per_axis) : dim_(dim), n_(n_per_axis), size_(1) {
  if (dim < 1 || dim > kMaxDim) {
    throw ConfigError("grid dimension must be in 1..5, got " + std::to_string(dim));
  }
  if (n_per_axis < 2 || !is_power_of_two(n_per_axis)) {
    throw ConfigError("points per axis must be a power of two >= 2, got " + std::to_string(n_per_axis));
  }
  // Complex<double> payload must fit a ptrdiff_t byte count.
  const std::size_t limit = static_cast<std::size_t>(std::numeric_limits<std::ptrdiff_t>::max()) / 16;
  for (int a = 0; a < dim; ++a) {
    if (size_ > limit / static_cast<std::size_t>(n_per_axis)) {
      throw ConfigError("grid size " + std::to_string(n_per_axis) + "^" + std::to_string(dim) +
                        " overflows the addressable range");
    }
    size_ *= static_cast<std::size_t>(n_per_axis);
  }
}

bool TorusGrid::contains(std::span<const int> k) const {
  if (static_cast<int>(k.size()) != dim_) return false;
  for (int v : k) {
    if (v < -n_ / 2 || v >= n_ / 2) return false;
  }
  return true;
}

Mode TorusGrid::mode(std::size_t flat) const {
  Mode k{};
  for (int a = dim_ - 1; a >= 0; --a) {
    k[a] = frequency(static_cast<int>(flat % static_cast<std::size_t>(n_)));
    flat /= static_cast<std::size_t>(n_);
  }
  return k;
}

std::size_t TorusGrid::flat_index(std::span<const int> k) const {
  if (!contains(k)) throw ConfigError("mode outside the frequency lattice");
  std::size_t flat = 0;
  for (int a = 0; a < dim_; ++a) {
    flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(axis_index(k[a]));
  }
  return flat;
}

double TorusGrid::volume() const { return std::pow(2.0 * std::numbers::pi, dim_); }

TorusGrid make_grid(int dim, int n_per_axis) { return TorusGrid(dim, n_per_axis); }

}  // namespace nlsfilt

#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "nlsfilt/spectral_field.hpp"

namespace nlsfilt {

// Random H^s datum sum_k <k>^{-(s + d/2 + eps)} g_k exp(i<k,x>), rescaled to
// a target L2 norm. g_k is uniform on [-1,1] + i[-1,1].
struct RoughDataSpec {
  double s = 1.0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  double target_l2 = 0.1;
  TorusGrid grid{1, 2};

  void validate() const;
};

// Supplies g_k for the mode with canonical flat index i.
using CoefficientSource = std::function<Complex(std::size_t flat_index)>;

// The deterministic generator behind rough_data(): SplitMix64 evaluated at
// counter positions, g_i = (u(seed, 2i+1), u(seed, 2i+2)) with
// u(seed, j) = 2 * (mix(seed + j * 0x9E3779B97F4A7C15) >> 11) * 2^-53 - 1,
// i.e. draws 2i+1 and 2i+2 of the SplitMix64 stream seeded with `seed`.
Complex splitmix_coefficient(std::uint64_t seed, std::size_t flat_index);
std::uint64_t splitmix64_mix(std::uint64_t z);

// <k> = (1 + |k|^2)^{1/2}
double japanese_bracket(double k_norm_sq);

// Coefficients <k>^{-(s+d/2+eps)} g_k before rescaling.
SpectralField rough_data_unnormalized(const RoughDataSpec& spec, const CoefficientSource& source);

// Throws NumericalAbort if the unnormalized field is identically zero.
SpectralField rough_data(const RoughDataSpec& spec);
SpectralField rough_data(const RoughDataSpec& spec, const CoefficientSource& source);

// Single mode amplitude * exp(i<k,x>). Throws ConfigError if k is off-lattice.
SpectralField plane_wave(const TorusGrid& grid, std::span<const int> k, Complex amplitude);

}  // namespace nlsfilt

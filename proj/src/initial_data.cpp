#include "nlsfilt/initial_data.hpp"

#include <cmath>

#include "nlsfilt/errors.hpp"

namespace nlsfilt {

void RoughDataSpec::validate() const {
  if (!(s >= 0.0) || !std::isfinite(s)) throw ConfigError("Sobolev exponent s must be >= 0");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw ConfigError("decay offset eps must be >= 0");
  if (!(target_l2 > 0.0) || !std::isfinite(target_l2)) throw ConfigError("target L2 norm must be positive");
}

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

double uniform_pm1(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t bits = splitmix64_mix(seed + counter * kGamma) >> 11;
  return 2.0 * (static_cast<double>(bits) * 0x1.0p-53) - 1.0;
}

}  // namespace

Complex splitmix_coefficient(std::uint64_t seed, std::size_t flat_index) {
  const auto i = static_cast<std::uint64_t>(flat_index);
  return {uniform_pm1(seed, 2 * i + 1), uniform_pm1(seed, 2 * i + 2)};
}

double japanese_bracket(double k_norm_sq) { return std::sqrt(1.0 + k_norm_sq); }

SpectralField rough_data_unnormalized(const RoughDataSpec& spec, const CoefficientSource& source) {
  spec.validate();
  const double decay = spec.s + 0.5 * spec.grid.dim() + spec.eps;
  SpectralField f(spec.grid);
  auto c = f.coeffs();
  for_each_mode(spec.grid, [&](std::size_t i, const Mode& k) {
    const double weight = std::pow(japanese_bracket(static_cast<double>(norm_sq(k))), -decay);
    c[i] = weight * source(i);
  });
  return f;
}

SpectralField rough_data(const RoughDataSpec& spec, const CoefficientSource& source) {
  SpectralField f = rough_data_unnormalized(spec, source);
  const double norm = l2_norm(f);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw NumericalAbort("rough data is identically zero before rescaling");
  }
  f *= Complex(spec.target_l2 / norm);
  return f;
}

SpectralField rough_data(const RoughDataSpec& spec) {
  const std::uint64_t seed = spec.seed;
  return rough_data(spec, [seed](std::size_t i) { return splitmix_coefficient(seed, i); });
}

SpectralField plane_wave(const TorusGrid& grid, std::span<const int> k, Complex amplitude) {
  SpectralField f(grid);
  f.at(k) = amplitude;
  return f;
}

}  // namespace nlsfilt

#include "nlsfilt/spectral_ops.hpp"

#include <cmath>

#include "nlsfilt/errors.hpp"

namespace nlsfilt {

FilterSpec::FilterSpec(double tau) : tau_(tau), cutoff_(0.0) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("filter time step must be positive");
  cutoff_ = 1.0 / std::sqrt(tau);
}

std::vector<unsigned char> projector_mask(const TorusGrid& grid, const FilterSpec& spec) {
  std::vector<unsigned char> mask(grid.size());
  for_each_mode(grid, [&](std::size_t i, const Mode& k) { mask[i] = spec.keeps(max_abs(k)) ? 1 : 0; });
  return mask;
}

std::vector<double> squared_wavenumbers(const TorusGrid& grid) {
  std::vector<double> k2(grid.size());
  for_each_mode(grid, [&](std::size_t i, const Mode& k) { k2[i] = static_cast<double>(norm_sq(k)); });
  return k2;
}

void apply_projector_inplace(SpectralField& f, const FilterSpec& spec) {
  auto c = f.coeffs();
  for_each_mode(f.grid(), [&](std::size_t i, const Mode& k) {
    if (!spec.keeps(max_abs(k))) c[i] = Complex{};
  });
}

SpectralField apply_projector(const SpectralField& f, const FilterSpec& spec) {
  SpectralField out = f;
  apply_projector_inplace(out, spec);
  return out;
}

SpectralField free_flow(const SpectralField& f, double t) {
  SpectralField out = f;
  auto c = out.coeffs();
  for_each_mode(f.grid(), [&](std::size_t i, const Mode& k) {
    const double phase = -t * static_cast<double>(norm_sq(k));
    c[i] *= Complex(std::cos(phase), std::sin(phase));
  });
  return out;
}

}  // namespace nlsfilt

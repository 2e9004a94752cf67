#include "nlsfilt/spectral_field.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "nlsfilt/errors.hpp"
#include "nlsfilt/fft.hpp"

namespace nlsfilt {

SpectralField::SpectralField(TorusGrid grid) : grid_(grid), coeffs_(grid.size()) {}

SpectralField::SpectralField(TorusGrid grid, std::vector<Complex> coeffs) : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size()) {
    throw ConfigError("coefficient count does not match grid size");
  }
}

SpectralField& SpectralField::operator*=(Complex a) {
  for (auto& c : coeffs_) c *= a;
  return *this;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw ConfigError("fields live on different grids");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw ConfigError("fields live on different grids");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField operator-(SpectralField a, const SpectralField& b) {
  a -= b;
  return a;
}

SpectralField operator*(Complex a, SpectralField f) {
  f *= a;
  return f;
}

double coefficient_energy(std::span<const Complex> coeffs) {
  double sum = 0.0;
  for (const auto& c : coeffs) sum += std::norm(c);
  return sum;
}

double l2_norm(const SpectralField& f) {
  return std::sqrt(f.grid().volume() * coefficient_energy(f.coeffs()));
}

double l2_norm_physical(std::span<const Complex> values, const TorusGrid& grid) {
  if (values.size() != grid.size()) throw ConfigError("value count does not match grid size");
  const double cell = std::pow(2.0 * std::numbers::pi / grid.n(), grid.dim());
  return std::sqrt(cell * coefficient_energy(values));
}

std::vector<Complex> to_physical(const SpectralField& f) {
  std::vector<Complex> values(f.coeffs().begin(), f.coeffs().end());
  fft::backward(values, f.grid().dim(), f.grid().n());
  return values;
}

SpectralField to_spectral(std::span<const Complex> values, const TorusGrid& grid) {
  if (values.size() != grid.size()) throw ConfigError("value count does not match grid size");
  std::vector<Complex> coeffs(values.begin(), values.end());
  fft::forward(coeffs, grid.dim(), grid.n());
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& c : coeffs) c *= scale;
  return SpectralField(grid, std::move(coeffs));
}

}  // namespace nlsfilt

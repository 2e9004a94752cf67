#pragma once

#include <vector>

#include "nlsfilt/spectral_field.hpp"

namespace nlsfilt {

// Frequency cutoff induced by a time step: a mode k survives the projector
// iff max_j |k_j| <= tau^{-1/2} (closed cube, ties kept).
class FilterSpec {
 public:
  // Throws ConfigError unless tau > 0.
  explicit FilterSpec(double tau);

  double tau() const { return tau_; }
  // 1/sqrt(tau), with a correctly rounded sqrt.
  double cutoff() const { return cutoff_; }
  bool keeps(int max_abs_frequency) const { return static_cast<double>(max_abs_frequency) <= cutoff_; }

 private:
  double tau_;
  double cutoff_;
};

SpectralField apply_projector(const SpectralField& f, const FilterSpec& spec);
void apply_projector_inplace(SpectralField& f, const FilterSpec& spec);

// Multiplies the coefficient at k by exp(-i t |k|^2), the flow of exp(i t Delta).
SpectralField free_flow(const SpectralField& f, double t);

// 0/1 mask of surviving modes in canonical order.
std::vector<unsigned char> projector_mask(const TorusGrid& grid, const FilterSpec& spec);
// |k|^2 per mode in canonical order.
std::vector<double> squared_wavenumbers(const TorusGrid& grid);

}  // namespace nlsfilt

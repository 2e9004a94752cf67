#pragma once

#include <limits>
#include <vector>

#include "nlsfilt/spectral_field.hpp"

namespace nlsfilt {

enum class Taper { none, hann };

// Finite sequence u_0..u_{M-1} on a common grid, zero outside.
struct SequenceSample {
  double tau = 1.0;
  std::vector<SpectralField> fields;
  Taper taper = Taper::none;

  // Throws ConfigError for tau <= 0, an empty sequence or mixed grids.
  void validate() const;
  std::size_t length() const { return fields.size(); }
};

// Per-entry taper weight; all ones for Taper::none.
std::vector<double> taper_weights(Taper taper, std::size_t length);

// (sum_k <k>^{2s} |c_k|^2)^{1/2} under the library normalization; s == 0 is
// exactly l2_norm().
double sobolev_norm(const SpectralField& f, double s);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// (tau sum_n ||u_n||_{H^s}^p)^{1/p}, or max_n ||u_n||_{H^s} for p = infinity.
// Throws ConfigError for p < 1.
double lp_tau_norm(const SequenceSample& seq, double p, double s);

enum class QuadraturePolicy {
  exact,    // sigma_samples >= 2M: exact for integer b
  relaxed,  // sigma_samples >= M
};

struct BourgainResult {
  double value = 0.0;
  std::size_t length = 0;  // M
  int sigma_samples = 0;
};

// Discrete Bourgain norm
//   || <k>^s <d_tau(sigma - |k|^2)>^b u~(sigma, k) ||_{L2 l2},
//   u~(sigma, k) = tau sum_m c_m(k) exp(i m tau sigma),
//   d_tau(x) = (exp(i tau x) - 1)/tau,
// with the sigma integral taken over one period [0, 2*pi/tau) against
// d sigma / (2*pi) on sigma_samples uniform nodes. With this measure the
// (s, b) = (0, 0) value is the l2_tau L2 norm.
BourgainResult discrete_bourgain(const SequenceSample& seq, double s, double b, int sigma_samples,
                                 QuadraturePolicy policy = QuadraturePolicy::exact);
double discrete_bourgain_norm(const SequenceSample& seq, double s, double b, int sigma_samples,
                              QuadraturePolicy policy = QuadraturePolicy::exact);

// <d_tau(x)>^{2b} = (1 + (2 - 2 cos(tau x))/tau^2)^b
double bourgain_weight(double tau, double x, double b);

}  // namespace nlsfilt

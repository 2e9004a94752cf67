#include "nlsfilt/bourgain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nlsfilt/errors.hpp"
#include "nlsfilt/fft.hpp"
#include "nlsfilt/initial_data.hpp"

namespace nlsfilt {

void SequenceSample::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("sequence tau must be positive");
  if (fields.empty()) throw ConfigError("sequence must contain at least one field");
  for (const auto& f : fields) {
    if (!(f.grid() == fields.front().grid())) throw ConfigError("sequence fields live on different grids");
  }
}

std::vector<double> taper_weights(Taper taper, std::size_t length) {
  std::vector<double> w(length, 1.0);
  if (taper == Taper::hann && length > 1) {
    for (std::size_t n = 0; n < length; ++n) {
      const double x = static_cast<double>(n) / static_cast<double>(length - 1);
      w[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * x);
    }
  }
  return w;
}

double sobolev_norm(const SpectralField& f, double s) {
  if (s == 0.0) return l2_norm(f);
  const auto c = f.coeffs();
  double sum = 0.0;
  for_each_mode(f.grid(), [&](std::size_t i, const Mode& k) {
    sum += std::pow(1.0 + static_cast<double>(norm_sq(k)), s) * std::norm(c[i]);
  });
  return std::sqrt(f.grid().volume() * sum);
}

double lp_tau_norm(const SequenceSample& seq, double p, double s) {
  if (!(p >= 1.0)) throw ConfigError("p must lie in [1, infinity]");
  seq.validate();
  const auto w = taper_weights(seq.taper, seq.length());
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t n = 0; n < seq.length(); ++n) m = std::max(m, w[n] * sobolev_norm(seq.fields[n], s));
    return m;
  }
  double sum = 0.0;
  for (std::size_t n = 0; n < seq.length(); ++n) sum += std::pow(w[n] * sobolev_norm(seq.fields[n], s), p);
  return std::pow(seq.tau * sum, 1.0 / p);
}

double bourgain_weight(double tau, double x, double b) {
  const double d2 = (2.0 - 2.0 * std::cos(tau * x)) / (tau * tau);
  return std::pow(1.0 + d2, b);
}

BourgainResult discrete_bourgain(const SequenceSample& seq, double s, double b, int sigma_samples,
                                 QuadraturePolicy policy) {
  seq.validate();
  const auto m_len = seq.length();
  const std::size_t required = policy == QuadraturePolicy::exact ? 2 * m_len : m_len;
  if (sigma_samples < 1 || static_cast<std::size_t>(sigma_samples) < required) {
    throw ConfigError("sigma_samples = " + std::to_string(sigma_samples) + " is below the required " +
                      std::to_string(required) + " for a sequence of length " + std::to_string(m_len));
  }

  const TorusGrid& grid = seq.fields.front().grid();
  const double tau = seq.tau;
  const auto nodes = static_cast<std::size_t>(sigma_samples);
  const auto w = taper_weights(seq.taper, m_len);
  // tau * sigma_j = 2*pi*j/S, so u~(sigma_j, k) is a length-S backward DFT
  // of the zero-padded time series c_m(k).
  std::vector<Complex> series(nodes);
  std::vector<double> weights(nodes);
  double total = 0.0;

  for_each_mode(grid, [&](std::size_t i, const Mode& k) {
    bool any = false;
    std::fill(series.begin(), series.end(), Complex{});
    for (std::size_t m = 0; m < m_len; ++m) {
      series[m] = w[m] * seq.fields[m].coeffs()[i];
      any = any || series[m] != Complex{};
    }
    if (!any) return;
    fft::backward(series, 1, sigma_samples);
    const double k2 = static_cast<double>(norm_sq(k));
    double sum_sigma = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) {
      const double sigma = 2.0 * std::numbers::pi * static_cast<double>(j) / (tau * static_cast<double>(nodes));
      sum_sigma += bourgain_weight(tau, sigma - k2, b) * std::norm(tau * series[j]);
    }
    // Node spacing 2*pi/(tau*S) against the measure d sigma/(2*pi).
    sum_sigma /= tau * static_cast<double>(nodes);
    total += std::pow(japanese_bracket(k2), 2.0 * s) * sum_sigma;
  });

  return {std::sqrt(grid.volume() * total), m_len, sigma_samples};
}

double discrete_bourgain_norm(const SequenceSample& seq, double s, double b, int sigma_samples,
                              QuadraturePolicy policy) {
  return discrete_bourgain(seq, s, b, sigma_samples, policy).value;
}

}  // namespace nlsfilt

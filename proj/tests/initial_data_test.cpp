#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <map>

#include "nlsfilt/errors.hpp"
#include "nlsfilt/initial_data.hpp"

using namespace nlsfilt;

TEST_CASE("SplitMix64 reference output") {
  // First output of the SplitMix64 stream with state 0.
  CHECK(splitmix64_mix(0x9E3779B97F4A7C15ULL) == 0xE220A8397B1DCDAFULL);
}

TEST_CASE("rough data is normalized to the target L2 norm") {
  RoughDataSpec spec;
  spec.s = 0.5;
  spec.eps = 0.0;
  spec.seed = 42;
  spec.target_l2 = 0.1;
  spec.grid = TorusGrid(3, 16);
  const SpectralField f = rough_data(spec);
  CHECK(std::abs(l2_norm(f) - 0.1) / 0.1 < 1e-14);
}

TEST_CASE("forced unit coefficients give <k>^{-1/2} before rescaling") {
  RoughDataSpec spec;
  spec.s = 0.0;
  spec.eps = 0.0;
  spec.grid = TorusGrid(1, 4);
  const SpectralField f = rough_data_unnormalized(spec, [](std::size_t) { return Complex(1.0); });
  // <k> on {-2,-1,0,1}: sqrt(5), sqrt(2), 1, sqrt(2); d/2 = 1/2.
  const std::map<int, double> expected{{-2, 0.66874030497642201}, {-1, 0.84089641525371450},
                                       {0, 1.0}, {1, 0.84089641525371450}};
  for (const auto& [k, v] : expected) {
    const std::array<int, 1> kk{k};
    CHECK(std::abs(f.at(kk) - Complex(v)) < 1e-15);
  }
}

TEST_CASE("same seed gives bit-identical fields, different seeds differ") {
  RoughDataSpec spec;
  spec.s = 1.0;
  spec.grid = TorusGrid(2, 16);
  spec.seed = 7;
  const SpectralField a = rough_data(spec);
  const SpectralField b = rough_data(spec);
  CHECK(a == b);
  spec.seed = 8;
  CHECK(!(rough_data(spec) == a));
}

TEST_CASE("generator draws lie in the complex square") {
  for (std::size_t i = 0; i < 1000; ++i) {
    const Complex g = splitmix_coefficient(99, i);
    CHECK(g.real() >= -1.0);
    CHECK(g.real() < 1.0);
    CHECK(g.imag() >= -1.0);
    CHECK(g.imag() < 1.0);
  }
}

TEST_CASE("invalid specs and an all-zero draw are rejected") {
  RoughDataSpec spec;
  spec.grid = TorusGrid(1, 8);
  spec.s = -0.1;
  CHECK_THROWS_AS(rough_data(spec), ConfigError);
  spec.s = 1.0;
  spec.target_l2 = 0.0;
  CHECK_THROWS_AS(rough_data(spec), ConfigError);
  spec.target_l2 = 0.1;
  CHECK_THROWS_AS(rough_data(spec, [](std::size_t) { return Complex{}; }), NumericalAbort);
}

// Per-shell mean amplitude regressed against log <k> over dyadic shells.
static double shell_decay_slope(const SpectralField& f) {
  std::map<int, std::pair<double, double>> shells;  // log2 shell -> (sum |c|, sum log <k>)
  std::map<int, int> counts;
  for_each_mode(f.grid(), [&](std::size_t i, const Mode& k) {
    const int a = std::abs(k[0]);
    if (a == 0) return;
    const int shell = static_cast<int>(std::floor(std::log2(a)));
    shells[shell].first += std::abs(f.coeffs()[i]);
    shells[shell].second += std::log(japanese_bracket(static_cast<double>(a) * a));
    ++counts[shell];
  });
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& [shell, sums] : shells) {
    const double x = sums.second / counts[shell];
    const double y = std::log(sums.first / counts[shell]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

TEST_CASE("spectral decay follows <k>^{-(s + d/2 + eps)}") {
  for (const auto& [s, eps] : {std::pair{1.0, 0.0}, std::pair{0.5, 0.3}, std::pair{2.0, 0.0}}) {
    for (int n : {256, 1024}) {
      RoughDataSpec spec;
      spec.s = s;
      spec.eps = eps;
      spec.seed = 3;
      spec.grid = TorusGrid(1, n);
      const double slope = shell_decay_slope(rough_data(spec));
      CHECK(std::abs(slope + (s + 0.5 + eps)) < 0.2);
    }
  }
}

TEST_CASE("plane waves") {
  const TorusGrid g(3, 8);
  const std::array<int, 3> zero{0, 0, 0};
  const SpectralField c = plane_wave(g, zero, 0.1);
  CHECK(c.coeffs()[0] == Complex(0.1));
  std::size_t nonzero = 0;
  for (auto v : c.coeffs()) nonzero += v != Complex{} ? 1 : 0;
  CHECK(nonzero == 1);

  const std::array<int, 3> k{1, 0, 0};
  const SpectralField w = plane_wave(g, k, Complex(0.6, 0.8));
  // ||c exp(i<k,x>)||_{L2(T^3)} = |c| (2 pi)^{3/2}
  CHECK(std::abs(l2_norm(w) - std::pow(2.0 * M_PI, 1.5)) < 1e-13);

  const std::array<int, 3> bad{4, 0, 0};
  CHECK_THROWS_AS(plane_wave(g, bad, 1.0), ConfigError);
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlsfilt/spectral_field.hpp"
#include "nlsfilt/spectral_ops.hpp"

namespace nlsfilt {

enum class DealiasPolicy { strict, warn, off };

DealiasPolicy parse_dealias_policy(const std::string& name);
std::string to_string(DealiasPolicy policy);

// True when N/2 >= 2*ceil(K) for the cutoff K of `filter`, i.e. the cubic
// product of band-limited fields aliases only outside the retained band.
bool alias_free(const TorusGrid& grid, const FilterSpec& filter);

struct StepperConfig {
  double tau = 0.01;
  int mu = -1;  // sign of the nonlinearity, i u_t = -Delta u - mu |u|^2 u
  bool filtered = true;
  TorusGrid grid{1, 2};
  DealiasPolicy dealias = DealiasPolicy::strict;

  // Throws ConfigError for tau outside (0, 1], mu not +-1, or a strict
  // dealias violation on a filtered configuration.
  void validate() const;
  bool dealias_satisfied() const;
};

// Lie splitting exp(i tau Delta) P (exp(mu i tau |P u|^2) P u), P either the
// projector onto max_j |k_j| <= K or the identity. Holds precomputed
// multipliers and a scratch buffer: one stepper per thread.
class LieStepper {
 public:
  // Projector bound to cfg.tau when cfg.filtered, identity otherwise.
  explicit LieStepper(const StepperConfig& cfg);
  // Steps of size cfg.tau with the projector fixed by `filter`.
  LieStepper(const StepperConfig& cfg, const FilterSpec& filter);

  // Throws NumericalAbort on NaN/Inf or when max |u(x)| exceeds kBlowUpBound.
  void step(SpectralField& u);
  void project(SpectralField& u) const;

  double tau() const { return tau_; }
  bool filtered() const { return filter_.has_value(); }

  static constexpr double kBlowUpBound = 1e6;

 private:
  double tau_;
  int mu_;
  TorusGrid grid_;
  std::optional<FilterSpec> filter_;
  std::vector<unsigned char> mask_;
  std::vector<Complex> propagator_;
  std::vector<Complex> scratch_;
};

[[nodiscard]] SpectralField lie_filtered_step(const SpectralField& u, const StepperConfig& cfg);
[[nodiscard]] SpectralField lie_standard_step(const SpectralField& u, const StepperConfig& cfg);

struct Trajectory {
  StepperConfig config;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> steps;  // step index n of each snapshot, t_n = n * tau
  std::vector<SpectralField> snapshots;
  std::vector<double> masses;  // L2 norm after every step, masses[n]
  std::vector<std::string> warnings;

  double time(std::size_t i) const { return static_cast<double>(steps[i]) * config.tau; }
  const SpectralField& final_state() const { return snapshots.back(); }
  // max_n (||u_{n+1}|| - ||u_n||), or 0 for fewer than two entries.
  double max_mass_increase() const;
};

// Snapshot 0 is P u0 (filtered) or u0; further snapshots every `stride`
// steps, and the final state is always kept.
Trajectory evolve(const SpectralField& u0, const StepperConfig& cfg, std::int64_t n_steps, std::int64_t stride,
                  std::uint64_t seed = 0);

// Flow of the filtered equation i u_t = -Delta u - mu P(|P u|^2 P u) with P
// fixed by tau_filter, approximated by filtered Lie steps of size fine_dt.
// cfg supplies mu, grid and dealias policy; cfg.tau is ignored.
SpectralField filtered_equation_reference(const SpectralField& u0, double tau_filter, double t_end, double fine_dt,
                                          const StepperConfig& cfg);

inline constexpr int kDefaultFineRatio = 64;

// ||Psi(w) - u_w(tau)||_{L2}: one filtered Lie step from P w against the
// filtered-equation flow over [0, tau] at fine_dt = tau / fine_ratio.
double local_error_probe(const SpectralField& w, double tau, const StepperConfig& cfg,
                         int fine_ratio = kDefaultFineRatio);

}  // namespace nlsfilt

#include "nlsfilt/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlsfilt/errors.hpp"
#include "nlsfilt/fft.hpp"

namespace nlsfilt {

DealiasPolicy parse_dealias_policy(const std::string& name) {
  if (name == "strict") return DealiasPolicy::strict;
  if (name == "warn") return DealiasPolicy::warn;
  if (name == "off") return DealiasPolicy::off;
  throw ConfigError("unknown dealias policy '" + name + "' (expected strict, warn or off)");
}

std::string to_string(DealiasPolicy policy) {
  switch (policy) {
    case DealiasPolicy::strict: return "strict";
    case DealiasPolicy::warn: return "warn";
    case DealiasPolicy::off: return "off";
  }
  return "?";
}

bool alias_free(const TorusGrid& grid, const FilterSpec& filter) {
  return static_cast<double>(grid.n() / 2) >= 2.0 * std::ceil(filter.cutoff());
}

void StepperConfig::validate() const {
  if (!(tau > 0.0) || tau > 1.0) throw ConfigError("time step must lie in (0, 1]");
  if (mu != 1 && mu != -1) throw ConfigError("mu must be +1 or -1");
  if (filtered && dealias == DealiasPolicy::strict && !dealias_satisfied()) {
    std::ostringstream msg;
    msg << "aliasing violation: N/2 = " << grid.n() / 2 << " < 2*ceil(tau^-1/2) = "
        << 2.0 * std::ceil(FilterSpec(tau).cutoff()) << " (use dealias policy warn or off)";
    throw ConfigError(msg.str());
  }
}

bool StepperConfig::dealias_satisfied() const { return alias_free(grid, FilterSpec(tau)); }

namespace {

std::vector<Complex> make_propagator(const TorusGrid& grid, double tau) {
  std::vector<Complex> p(grid.size());
  for_each_mode(grid, [&](std::size_t i, const Mode& k) {
    const double phase = -tau * static_cast<double>(norm_sq(k));
    p[i] = Complex(std::cos(phase), std::sin(phase));
  });
  return p;
}

}  // namespace

LieStepper::LieStepper(const StepperConfig& cfg)
    : tau_(cfg.tau), mu_(cfg.mu), grid_(cfg.grid), propagator_(make_propagator(cfg.grid, cfg.tau)),
      scratch_(cfg.grid.size()) {
  if (cfg.filtered) {
    filter_.emplace(cfg.tau);
    mask_ = projector_mask(grid_, *filter_);
  }
}

LieStepper::LieStepper(const StepperConfig& cfg, const FilterSpec& filter)
    : tau_(cfg.tau), mu_(cfg.mu), grid_(cfg.grid), filter_(filter), mask_(projector_mask(cfg.grid, filter)),
      propagator_(make_propagator(cfg.grid, cfg.tau)), scratch_(cfg.grid.size()) {}

void LieStepper::project(SpectralField& u) const {
  if (!filter_) return;
  auto c = u.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!mask_[i]) c[i] = Complex{};
  }
}

void LieStepper::step(SpectralField& u) {
  if (!(u.grid() == grid_)) throw ConfigError("field grid does not match stepper grid");
  auto c = u.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    scratch_[i] = (!filter_ || mask_[i]) ? c[i] : Complex{};
  }
  fft::backward(scratch_, grid_.dim(), grid_.n());

  double peak = 0.0;
  const double strength = mu_ * tau_;
  for (auto& v : scratch_) {
    const double m = std::norm(v);
    if (!std::isfinite(m)) throw NumericalAbort("non-finite value encountered during nonlinear substep");
    peak = std::max(peak, m);
    const double phase = strength * m;
    v *= Complex(std::cos(phase), std::sin(phase));
  }
  if (std::sqrt(peak) > kBlowUpBound) {
    std::ostringstream msg;
    msg << "blow-up guard: max |u| = " << std::sqrt(peak) << " exceeds " << kBlowUpBound;
    throw NumericalAbort(msg.str());
  }

  fft::forward(scratch_, grid_.dim(), grid_.n());
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = (!filter_ || mask_[i]) ? scratch_[i] * scale * propagator_[i] : Complex{};
  }
}

SpectralField lie_filtered_step(const SpectralField& u, const StepperConfig& cfg) {
  if (!cfg.filtered) throw ConfigError("lie_filtered_step requires a filtered configuration");
  cfg.validate();
  LieStepper stepper(cfg);
  SpectralField out = u;
  stepper.step(out);
  return out;
}

SpectralField lie_standard_step(const SpectralField& u, const StepperConfig& cfg) {
  if (cfg.filtered) throw ConfigError("lie_standard_step requires an unfiltered configuration");
  cfg.validate();
  LieStepper stepper(cfg);
  SpectralField out = u;
  stepper.step(out);
  return out;
}

double Trajectory::max_mass_increase() const {
  double worst = 0.0;
  for (std::size_t n = 1; n < masses.size(); ++n) worst = std::max(worst, masses[n] - masses[n - 1]);
  return worst;
}

Trajectory evolve(const SpectralField& u0, const StepperConfig& cfg, std::int64_t n_steps, std::int64_t stride,
                  std::uint64_t seed) {
  if (n_steps < 0) throw ConfigError("step count must be nonnegative");
  if (stride < 1) throw ConfigError("snapshot stride must be >= 1");
  cfg.validate();

  Trajectory traj;
  traj.config = cfg;
  traj.seed = seed;
  if (cfg.filtered && cfg.dealias == DealiasPolicy::warn && !cfg.dealias_satisfied()) {
    traj.warnings.push_back("dealias: N/2 < 2*ceil(tau^-1/2); cubic term aliases into the filter band");
  }

  LieStepper stepper(cfg);
  SpectralField u = u0;
  stepper.project(u);
  traj.masses.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.masses.push_back(l2_norm(u));
  traj.steps.push_back(0);
  traj.snapshots.push_back(u);

  for (std::int64_t n = 1; n <= n_steps; ++n) {
    try {
      stepper.step(u);
    } catch (const NumericalAbort& e) {
      throw NumericalAbort(std::string(e.what()) + " at step " + std::to_string(n));
    }
    traj.masses.push_back(l2_norm(u));
    if (n % stride == 0 || n == n_steps) {
      traj.steps.push_back(n);
      traj.snapshots.push_back(u);
    }
  }
  return traj;
}

SpectralField filtered_equation_reference(const SpectralField& u0, double tau_filter, double t_end, double fine_dt,
                                          const StepperConfig& cfg) {
  const FilterSpec filter(tau_filter);
  if (!(t_end >= 0.0)) throw ConfigError("t_end must be nonnegative");
  if (!(fine_dt > 0.0) || fine_dt > tau_filter / 16.0) {
    throw ConfigError("fine_dt must lie in (0, tau_filter/16]");
  }
  const double ratio = t_end / fine_dt;
  const auto n_steps = static_cast<std::int64_t>(std::llround(ratio));
  if (std::abs(static_cast<double>(n_steps) * fine_dt - t_end) > 1e-9 * std::max(t_end, fine_dt)) {
    throw ConfigError("fine_dt does not divide t_end");
  }
  if (cfg.dealias == DealiasPolicy::strict && !alias_free(cfg.grid, filter)) {
    throw ConfigError("aliasing violation for the filtered-equation reference");
  }
  if (cfg.mu != 1 && cfg.mu != -1) throw ConfigError("mu must be +1 or -1");

  StepperConfig fine = cfg;
  fine.tau = fine_dt;
  fine.filtered = true;
  LieStepper stepper(fine, filter);
  SpectralField u = u0;
  stepper.project(u);
  for (std::int64_t n = 0; n < n_steps; ++n) stepper.step(u);
  return u;
}

double local_error_probe(const SpectralField& w, double tau, const StepperConfig& cfg, int fine_ratio) {
  if (fine_ratio < 16) throw ConfigError("fine_ratio must be >= 16");
  StepperConfig coarse = cfg;
  coarse.tau = tau;
  coarse.filtered = true;
  coarse.validate();
  LieStepper stepper(coarse);
  SpectralField start = w;
  stepper.project(start);
  SpectralField one_step = start;
  stepper.step(one_step);
  const SpectralField reference = filtered_equation_reference(start, tau, tau, tau / fine_ratio, coarse);
  return l2_norm(one_step - reference);
}

}  // namespace nlsfilt

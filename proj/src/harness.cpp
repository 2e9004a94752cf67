#include "nlsfilt/harness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlsfilt/errors.hpp"
#include "nlsfilt/initial_data.hpp"
#include "nlsfilt/parallel.hpp"

namespace nlsfilt {

namespace {

bool is_dyadic(double x) {
  int e = 0;
  return x > 0.0 && std::frexp(x, &e) == 0.5;
}

// Exact step count T/tau, or nullopt when tau does not divide T.
std::optional<std::int64_t> step_count(double T, double tau) {
  const double r = T / tau;
  const auto n = static_cast<std::int64_t>(std::llround(r));
  if (n < 1 || static_cast<double>(n) * tau != T) return std::nullopt;
  return n;
}

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ConfigError("plan field '" + field + "': " + what);
}

}  // namespace

void ExperimentPlan::validate() const {
  try {
    (void)grid();
  } catch (const ConfigError& e) {
    field_error("dim/n_per_axis", e.what());
  }
  if (s.empty()) field_error("s", "at least one Sobolev exponent required");
  for (double v : s) {
    if (!(v >= 0.0) || !std::isfinite(v)) field_error("s", "exponents must be finite and >= 0");
  }
  if (mu != 1 && mu != -1) field_error("mu", "must be +1 or -1");
  if (!(T > 0.0) || !std::isfinite(T)) field_error("T", "must be positive");
  if (tau_ladder.size() < 4) field_error("tau_ladder", "at least 4 steps required for an order fit");
  for (double tau : tau_ladder) {
    if (!is_dyadic(tau) || tau > 1.0) field_error("tau_ladder", "steps must be powers of two in (0, 1]");
    if (!step_count(T, tau)) field_error("tau_ladder", "T/tau must be an integer for every step");
  }
  if (reference.method != "standard-lie") field_error("reference.method", "only 'standard-lie' is supported");
  if (!is_dyadic(reference.tau_ref)) field_error("reference.tau_ref", "must be a power of two");
  const double min_tau = *std::min_element(tau_ladder.begin(), tau_ladder.end());
  if (!(reference.tau_ref < min_tau / 4.0)) field_error("reference.tau_ref", "must be < min(tau_ladder)/4");
  if (!step_count(T, reference.tau_ref)) field_error("reference.tau_ref", "T/tau_ref must be an integer");
  if (reference.n_ref_per_axis != 0 && reference.n_ref_per_axis != n_per_axis) {
    field_error("reference.n_ref_per_axis", "the reference runs on the plan grid; must equal n_per_axis");
  }
  if (seeds.empty()) field_error("seeds", "at least one seed required");
  if (!(target_l2 > 0.0) || !std::isfinite(target_l2)) field_error("target_l2", "must be positive");
  if (!(eps >= 0.0) || !std::isfinite(eps)) field_error("eps", "must be >= 0");
  if (initial == InitialKind::plane_wave && !grid().contains(plane_wave.k)) {
    field_error("initial_data.k", "mode outside the frequency lattice");
  }
  if (local_error.fine_ratio < 16) field_error("local_error.fine_ratio", "must be >= 16");
  if (local_error.probe_times.empty()) field_error("local_error.probe_times", "at least one probe time required");
  for (double t : local_error.probe_times) {
    if (!(t >= 0.0) || !(t < T)) field_error("local_error.probe_times", "times must lie in [0, T)");
  }
}

static std::vector<double> dyadic_ladder(int first_exp, int last_exp) {
  std::vector<double> ladder;
  for (int e = first_exp; e <= last_exp; ++e) ladder.push_back(std::ldexp(1.0, -e));
  return ladder;
}

ExperimentPlan desk_plan_1d() {
  ExperimentPlan plan;
  plan.dim = 1;
  plan.n_per_axis = 1 << 10;
  plan.s = {1.0};
  plan.tau_ladder = dyadic_ladder(6, 12);
  plan.reference.tau_ref = 0x1p-16;
  plan.reference.n_ref_per_axis = plan.n_per_axis;
  return plan;
}

ExperimentPlan desk_plan_3d() {
  ExperimentPlan plan;
  plan.dim = 3;
  plan.n_per_axis = 1 << 5;
  plan.s = {1.0, 2.0};
  plan.tau_ladder = dyadic_ladder(5, 10);
  plan.reference.tau_ref = 0x1p-14;
  plan.reference.n_ref_per_axis = plan.n_per_axis;
  return plan;
}

SpectralField initial_field(const ExperimentPlan& plan, double s, std::uint64_t seed) {
  const TorusGrid grid = plan.grid();
  switch (plan.initial) {
    case InitialKind::rough: {
      RoughDataSpec spec;
      spec.s = s;
      spec.eps = plan.eps;
      spec.seed = seed;
      spec.target_l2 = plan.target_l2;
      spec.grid = grid;
      return rough_data(spec);
    }
    case InitialKind::plane_wave:
      return plane_wave(grid, plan.plane_wave.k, plan.plane_wave.amplitude);
    case InitialKind::zero:
      return SpectralField(grid);
  }
  throw ConfigError("unknown initial data kind");
}

OrderFit fit_order(std::span<const OrderSample> samples) {
  if (samples.size() < 2) throw ConfigError("order fit needs at least two samples");
  const double n = static_cast<double>(samples.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& p : samples) {
    if (!(p.error > 0.0) || !(p.tau > 0.0)) throw ConfigError("order fit needs positive steps and errors");
    sx += std::log2(p.tau);
    sy += std::log2(p.error);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : samples) {
    const double dx = std::log2(p.tau) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log2(p.error) - my);
  }
  if (sxx == 0.0) throw ConfigError("order fit needs at least two distinct steps");
  OrderFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (const auto& p : samples) {
    const double r = std::log2(p.error) - (fit.intercept + fit.slope * std::log2(p.tau));
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / n);
  return fit;
}

RegimeAnnotation annotate_regime(int dim, double s) {
  const RegimeResult r = regime_check({dim, s, std::nullopt});
  RegimeAnnotation a;
  a.admissible = r.admissible;
  a.table1_case = r.table1_case;
  std::ostringstream note;
  if (r.admissible) {
    note << "admissible: " << r.s0_condition;
  } else {
    note << "outside the proven regime (" << r.s0_condition << "); run anyway";
  }
  a.note = note.str();
  return a;
}

namespace {

// Status and fit for a curve of positive-or-zero errors. Exact families
// (every error at rounding level) get no slope.
template <typename Samples, typename ErrorOf>
void fit_curve(const Samples& samples, ErrorOf error_of, double scale, std::string& status,
               std::optional<OrderFit>& fit) {
  std::vector<OrderSample> pts;
  double worst = 0.0;
  bool any_zero = false;
  for (const auto& smp : samples) {
    const double e = error_of(smp);
    worst = std::max(worst, e);
    any_zero = any_zero || !(e > 0.0);
    pts.push_back({smp.tau, e});
  }
  if (worst == 0.0) {
    status = "undefined: zero errors";
    return;
  }
  if (any_zero || worst <= 1e-10 * scale) {
    status = "degenerate: exact family";
    return;
  }
  status = "ok";
  fit = fit_order(pts);
}

}  // namespace

ConvergenceReport run_convergence(const ExperimentPlan& plan, unsigned threads) {
  plan.validate();
  const TorusGrid grid = plan.grid();

  struct CurveJob {
    double s;
    std::uint64_t seed;
  };
  std::vector<CurveJob> jobs;
  for (double s : plan.s) {
    for (auto seed : plan.seeds) jobs.push_back({s, seed});
  }

  std::vector<std::optional<SpectralField>> initial(jobs.size());
  for (std::size_t c = 0; c < jobs.size(); ++c) initial[c] = initial_field(plan, jobs[c].s, jobs[c].seed);

  // Phase 1: references (tau_ref and optionally tau_ref/2) per curve.
  const std::size_t refs_per_curve = plan.check_reference ? 2 : 1;
  std::vector<std::optional<SpectralField>> references(jobs.size() * refs_per_curve);
  std::vector<double> reference_drift(jobs.size(), 0.0);
  parallel_for(references.size(), threads, [&](std::size_t r) {
    const std::size_t c = r / refs_per_curve;
    const bool half = r % refs_per_curve == 1;
    StepperConfig cfg;
    cfg.tau = half ? plan.reference.tau_ref / 2.0 : plan.reference.tau_ref;
    cfg.mu = plan.mu;
    cfg.filtered = false;
    cfg.grid = grid;
    cfg.dealias = DealiasPolicy::off;
    const auto n = *step_count(plan.T, cfg.tau);
    Trajectory traj = evolve(*initial[c], cfg, n, n, jobs[c].seed);
    if (!half) reference_drift[c] = std::abs(traj.masses.back() - traj.masses.front());
    references[r] = std::move(traj.snapshots.back());
  });

  // Phase 2: filtered runs for every (curve, ladder step).
  const std::size_t ladder = plan.tau_ladder.size();
  std::vector<ErrorSample> samples(jobs.size() * ladder);
  parallel_for(samples.size(), threads, [&](std::size_t j) {
    const std::size_t c = j / ladder;
    StepperConfig cfg;
    cfg.tau = plan.tau_ladder[j % ladder];
    cfg.mu = plan.mu;
    cfg.filtered = true;
    cfg.grid = grid;
    cfg.dealias = plan.dealias;
    const auto n = *step_count(plan.T, cfg.tau);
    Trajectory traj = evolve(*initial[c], cfg, n, n, jobs[c].seed);
    ErrorSample& out = samples[j];
    out.tau = cfg.tau;
    out.l2_error = l2_norm(traj.final_state() - *references[c * refs_per_curve]);
    if (plan.check_reference) out.l2_error_half_reference = l2_norm(traj.final_state() - *references[c * refs_per_curve + 1]);
    out.max_mass_increase = traj.max_mass_increase();
    out.warnings = traj.warnings;
  });

  ConvergenceReport report;
  report.plan = plan;
  for (std::size_t c = 0; c < jobs.size(); ++c) {
    ConvergenceCurve curve;
    curve.s = jobs[c].s;
    curve.seed = jobs[c].seed;
    curve.initial_l2 = l2_norm(*initial[c]);
    curve.samples.assign(samples.begin() + static_cast<std::ptrdiff_t>(c * ladder),
                         samples.begin() + static_cast<std::ptrdiff_t>((c + 1) * ladder));
    curve.theoretical_slope = curve.s / 2.0;
    curve.regime = annotate_regime(plan.dim, curve.s);
    curve.reference_mass_drift = reference_drift[c];

    fit_curve(curve.samples, [](const ErrorSample& e) { return e.l2_error; }, curve.initial_l2, curve.fit_status,
              curve.fit);

    std::vector<ErrorSample> by_tau = curve.samples;
    std::sort(by_tau.begin(), by_tau.end(), [](const auto& a, const auto& b) { return a.tau > b.tau; });
    std::size_t good = 0;
    for (std::size_t i = 1; i < by_tau.size(); ++i) {
      if (by_tau[i].l2_error <= by_tau[i - 1].l2_error) ++good;
    }
    curve.monotone_fraction = by_tau.size() > 1 ? static_cast<double>(good) / static_cast<double>(by_tau.size() - 1) : 1.0;
    curve.wiring_suspect = curve.monotone_fraction < 0.8;

    if (plan.check_reference) {
      curve.reference_checked = true;
      for (const auto& e : curve.samples) {
        curve.reference_shift = std::max(curve.reference_shift, std::abs(e.l2_error - e.l2_error_half_reference));
      }
      curve.reference_limited = !(curve.reference_shift < 0.05 * by_tau.back().l2_error);
    }
    report.curves.push_back(std::move(curve));
  }
  return report;
}

LocalErrorReport run_local_error(const ExperimentPlan& plan, unsigned threads) {
  plan.validate();
  const TorusGrid grid = plan.grid();

  struct CurveJob {
    double s;
    std::uint64_t seed;
  };
  std::vector<CurveJob> jobs;
  for (double s : plan.s) {
    for (auto seed : plan.seeds) jobs.push_back({s, seed});
  }
  std::vector<std::optional<SpectralField>> initial(jobs.size());
  for (std::size_t c = 0; c < jobs.size(); ++c) initial[c] = initial_field(plan, jobs[c].s, jobs[c].seed);

  const std::size_t ladder = plan.tau_ladder.size();
  std::vector<DefectSample> samples(jobs.size() * ladder);
  std::vector<double> mass_increase(samples.size(), 0.0);
  parallel_for(samples.size(), threads, [&](std::size_t j) {
    const std::size_t c = j / ladder;
    StepperConfig cfg;
    cfg.tau = plan.tau_ladder[j % ladder];
    cfg.mu = plan.mu;
    cfg.filtered = true;
    cfg.grid = grid;
    cfg.dealias = plan.dealias;

    // Prepared states: the filtered trajectory at the requested probe times.
    std::vector<std::int64_t> probe_steps;
    for (double t : plan.local_error.probe_times) {
      probe_steps.push_back(static_cast<std::int64_t>(std::floor(t / cfg.tau)));
    }
    const std::int64_t last = *std::max_element(probe_steps.begin(), probe_steps.end());
    Trajectory traj = evolve(*initial[c], cfg, last, 1, jobs[c].seed);
    mass_increase[j] = traj.max_mass_increase();

    DefectSample& out = samples[j];
    out.tau = cfg.tau;
    double sum = 0.0;
    for (auto n : probe_steps) {
      const double d = local_error_probe(traj.snapshots[static_cast<std::size_t>(n)], cfg.tau, cfg,
                                         plan.local_error.fine_ratio);
      out.probes.push_back(d);
      sum += d;
    }
    out.defect = sum / static_cast<double>(probe_steps.size());
  });

  LocalErrorReport report;
  report.plan = plan;
  for (std::size_t c = 0; c < jobs.size(); ++c) {
    LocalErrorCurve curve;
    curve.s = jobs[c].s;
    curve.seed = jobs[c].seed;
    curve.samples.assign(samples.begin() + static_cast<std::ptrdiff_t>(c * ladder),
                         samples.begin() + static_cast<std::ptrdiff_t>((c + 1) * ladder));
    curve.theoretical_slope = 1.0 + curve.s / 2.0;
    for (std::size_t i = c * ladder; i < (c + 1) * ladder; ++i) {
      curve.max_mass_increase = std::max(curve.max_mass_increase, mass_increase[i]);
    }
    fit_curve(curve.samples, [](const DefectSample& e) { return e.defect; }, l2_norm(*initial[c]), curve.fit_status,
              curve.fit);
    report.curves.push_back(std::move(curve));
  }
  return report;
}

}  // namespace nlsfilt

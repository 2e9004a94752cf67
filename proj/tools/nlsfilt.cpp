// nlsfilt: filtered Lie splitting for the periodic cubic NLS.
//
// Exit codes: 0 success, 2 usage/config error, 3 numerical abort.

#include <fmt/core.h>
#include <fmt/ranges.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlsfilt/bourgain.hpp"
#include "nlsfilt/errors.hpp"
#include "nlsfilt/field_io.hpp"
#include "nlsfilt/harness.hpp"
#include "nlsfilt/initial_data.hpp"
#include "nlsfilt/integrators.hpp"
#include "nlsfilt/parallel.hpp"
#include "nlsfilt/plan_io.hpp"
#include "nlsfilt/regime.hpp"

namespace {

using namespace nlsfilt;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct SolveArgs {
  std::optional<int> dim;
  std::optional<int> n;
  std::optional<double> s;
  std::string init_file;
  double tau = 0.0;
  double T = 0.0;
  int mu = -1;
  bool filtered = false;
  std::uint64_t seed = 0;
  double eps = 0.0;
  double l2 = 0.1;
  std::string dealias = "strict";
  std::string out = "state.bin";
  bool json_summary = false;
};

struct PlanArgs {
  std::string plan_file;
  bool dry_run = false;
  std::string out_json;
  std::string out_csv;
  std::vector<double> s;
  std::vector<std::uint64_t> seeds;
  std::optional<double> tau_ref;
  bool no_reference_check = false;
};

struct BourgainArgs {
  std::string file;
  double s = 0.0;
  double b = 0.0;
  std::optional<int> sigma_samples;
  bool relaxed = false;
  bool json_out = false;
};

struct RegimeArgs {
  int dim = 3;
  double s0 = 1.0;
  std::optional<double> b0;
  bool json_out = false;
};

int run_solve(const SolveArgs& a) {
  SpectralField u0 = [&] {
    if (!a.init_file.empty()) {
      if (a.dim || a.n || a.s) throw ConfigError("--init-file excludes --dim/--n/--s");
      return load_field(a.init_file);
    }
    if (!a.dim || !a.n || !a.s) throw ConfigError("either --init-file or all of --dim, --n, --s are required");
    RoughDataSpec spec;
    spec.grid = TorusGrid(*a.dim, *a.n);
    spec.s = *a.s;
    spec.eps = a.eps;
    spec.seed = a.seed;
    spec.target_l2 = a.l2;
    return rough_data(spec);
  }();

  StepperConfig cfg;
  cfg.tau = a.tau;
  cfg.mu = a.mu;
  cfg.filtered = a.filtered;
  cfg.grid = u0.grid();
  cfg.dealias = parse_dealias_policy(a.dealias);
  cfg.validate();
  if (!(a.T >= 0.0)) throw ConfigError("--T must be nonnegative");
  const auto n_steps = static_cast<std::int64_t>(std::llround(a.T / a.tau));
  if (std::abs(static_cast<double>(n_steps) * a.tau - a.T) > 1e-9 * std::max(a.T, a.tau)) {
    throw ConfigError("--T must be an integer multiple of --tau");
  }

  const Trajectory traj = evolve(u0, cfg, n_steps, std::max<std::int64_t>(n_steps, 1), a.seed);
  save_field(a.out, traj.final_state());

  const json summary = {{"steps", n_steps},
                        {"tau", cfg.tau},
                        {"T", a.T},
                        {"mu", cfg.mu},
                        {"filtered", cfg.filtered},
                        {"mass_input", l2_norm(u0)},
                        {"mass_start", traj.masses.front()},
                        {"mass_end", traj.masses.back()},
                        {"max_mass_increase", traj.max_mass_increase()},
                        {"warnings", traj.warnings},
                        {"out", a.out}};
  if (a.json_summary) {
    fmt::print("{}\n", summary.dump(2));
  } else {
    for (const auto& w : traj.warnings) fmt::print(stderr, "warning: {}\n", w);
    fmt::print("steps       {}\n", n_steps);
    fmt::print("mass_start  {:.17g}\n", traj.masses.front());
    fmt::print("mass_end    {:.17g}\n", traj.masses.back());
    fmt::print("state       {}\n", a.out);
  }
  return kExitOk;
}

ExperimentPlan resolve_plan(const PlanArgs& a, const std::string& default_stem) {
  ExperimentPlan plan = load_plan(a.plan_file);
  if (!a.s.empty()) plan.s = a.s;
  if (!a.seeds.empty()) plan.seeds = a.seeds;
  if (a.tau_ref) plan.reference.tau_ref = *a.tau_ref;
  if (a.no_reference_check) plan.check_reference = false;
  if (!a.out_json.empty()) plan.output.json = a.out_json;
  if (!a.out_csv.empty()) plan.output.csv = a.out_csv;
  if (plan.output.json.empty()) plan.output.json = default_stem + ".json";
  if (plan.output.csv.empty()) plan.output.csv = default_stem + ".csv";
  plan.validate();
  return plan;
}

std::string slope_text(const std::optional<OrderFit>& fit) {
  return fit ? fmt::format("{:.4f}", fit->slope) : std::string("-");
}

int run_converge(const PlanArgs& a, unsigned threads) {
  const ExperimentPlan plan = resolve_plan(a, "convergence_report");
  if (a.dry_run) {
    fmt::print("{}\n", plan_to_json(plan).dump(2));
    return kExitOk;
  }
  const ConvergenceReport report = run_convergence(plan, threads);
  write_text_file(plan.output.json, report_to_json(report).dump(2) + "\n");
  write_text_file(plan.output.csv, report_to_csv(report));
  for (const auto& c : report.curves) {
    fmt::print("s={} seed={} slope={} (theory {}) status={}{}\n", c.s, c.seed, slope_text(c.fit),
               c.theoretical_slope, c.fit_status, c.reference_limited ? " [reference-limited]" : "");
  }
  fmt::print("wrote {} and {}\n", plan.output.json, plan.output.csv);
  return kExitOk;
}

int run_local(const PlanArgs& a, unsigned threads) {
  const ExperimentPlan plan = resolve_plan(a, "local_error_report");
  if (a.dry_run) {
    fmt::print("{}\n", plan_to_json(plan).dump(2));
    return kExitOk;
  }
  const LocalErrorReport report = run_local_error(plan, threads);
  write_text_file(plan.output.json, local_report_to_json(report).dump(2) + "\n");
  write_text_file(plan.output.csv, local_report_to_csv(report));
  for (const auto& c : report.curves) {
    fmt::print("s={} seed={} slope={} (theory {}, L2 proxy) status={}\n", c.s, c.seed, slope_text(c.fit),
               c.theoretical_slope, c.fit_status);
  }
  fmt::print("wrote {} and {}\n", plan.output.json, plan.output.csv);
  return kExitOk;
}

int run_bourgain(const BourgainArgs& a) {
  json doc;
  try {
    doc = json::parse(read_text_file(a.file));
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("sequence file: ") + e.what());
  }
  const SequenceSample seq = sequence_from_json(doc);
  const int samples = a.sigma_samples.value_or(static_cast<int>(2 * seq.length()));
  const auto policy = a.relaxed ? QuadraturePolicy::relaxed : QuadraturePolicy::exact;
  const BourgainResult r = discrete_bourgain(seq, a.s, a.b, samples, policy);
  if (a.json_out) {
    const json out = {{"value", r.value}, {"s", a.s},  {"b", a.b},
                      {"tau", seq.tau},   {"M", r.length}, {"sigma_samples", r.sigma_samples}};
    fmt::print("{}\n", out.dump(2));
  } else {
    fmt::print("X^{{s,b}}_tau norm = {:.17g}  (s={}, b={}, tau={}, M={}, sigma_samples={})\n", r.value, a.s, a.b,
               seq.tau, r.length, r.sigma_samples);
  }
  return kExitOk;
}

int run_regime(const RegimeArgs& a) {
  const RegimeResult r = regime_check({a.dim, a.s0, a.b0});
  if (a.json_out) {
    fmt::print("{}\n", regime_to_json(r).dump(2));
    return kExitOk;
  }
  fmt::print("d = {}, s0 = {}: {}\n", a.dim, a.s0, r.admissible ? "admissible" : "inadmissible");
  fmt::print("  requires {}\n", r.s0_condition);
  if (r.b0_interval_empty) {
    fmt::print("  b0 interval empty\n");
  } else {
    fmt::print("  b0 in ({}, {})\n", r.b0_lo, r.b0_hi);
  }
  if (r.b1) fmt::print("  b1 = {}{}\n", *r.b1, *r.b0_in_interval ? "" : "  (b0 outside interval)");
  if (r.table1_case > 0) {
    fmt::print("  case {}: s0 in {}, p = {}, q = {}\n", r.table1_case, r.case_interval->str(), r.case_pair->p_str(),
               r.case_pair->q.str());
  } else {
    fmt::print("  s0 lies in none of the tabulated cases\n");
  }
  return kExitOk;
}

void add_plan_options(CLI::App* cmd, PlanArgs& a) {
  cmd->add_option("plan", a.plan_file, "Plan file (JSON)")->required();
  cmd->add_flag("--dry-run", a.dry_run, "Print the resolved plan and exit without writing files");
  cmd->add_option("--out-json", a.out_json, "Report JSON path");
  cmd->add_option("--out-csv", a.out_csv, "Report CSV path");
  cmd->add_option("--s", a.s, "Override the Sobolev exponent list");
  cmd->add_option("--seeds", a.seeds, "Override the seed list");
  cmd->add_option("--tau-ref", a.tau_ref, "Override the reference step");
  cmd->add_flag("--no-reference-check", a.no_reference_check, "Skip the tau_ref/2 consistency run");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Filtered Lie splitting for the periodic cubic nonlinear Schroedinger equation"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = nlsfilt::default_thread_count();
  app.add_option("--threads", threads, "Worker thread cap (default: NLSFILT_THREADS or hardware)")
      ->check(CLI::PositiveNumber);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Evolve one initial datum and write the final spectral state");
  solve_cmd->add_option("--dim", solve.dim, "Dimension 1..5");
  solve_cmd->add_option("--n", solve.n, "Points per axis (power of two)");
  solve_cmd->add_option("--s", solve.s, "Sobolev exponent of the rough datum");
  solve_cmd->add_option("--init-file", solve.init_file, "Initial spectral state (binary dump or JSON)");
  solve_cmd->add_option("--tau", solve.tau, "Time step")->required();
  solve_cmd->add_option("--T", solve.T, "Final time")->required();
  solve_cmd->add_option("--mu", solve.mu, "Nonlinearity sign (+1 or -1)");
  solve_cmd->add_flag("--filtered", solve.filtered, "Use filtered Lie splitting (default: standard Lie)");
  solve_cmd->add_option("--seed", solve.seed, "Random seed");
  solve_cmd->add_option("--eps", solve.eps, "Decay offset of the rough datum");
  solve_cmd->add_option("--l2", solve.l2, "L2 norm of the rough datum");
  solve_cmd->add_option("--dealias", solve.dealias, "strict | warn | off");
  solve_cmd->add_option("--out", solve.out, "Output state (.json for JSON, binary otherwise)");
  solve_cmd->add_flag("--json", solve.json_summary, "Print the run summary as JSON");

  PlanArgs converge;
  auto* converge_cmd = app.add_subcommand("converge", "Run a convergence study from a plan file");
  add_plan_options(converge_cmd, converge);

  PlanArgs local;
  auto* local_cmd = app.add_subcommand("local-error", "Measure one-step defects against the filtered equation");
  add_plan_options(local_cmd, local);

  BourgainArgs bourgain;
  auto* bourgain_cmd = app.add_subcommand("bourgain-norm", "Discrete Bourgain norm of a sequence file");
  bourgain_cmd->add_option("file", bourgain.file, "Sequence file (JSON)")->required();
  bourgain_cmd->add_option("--s", bourgain.s, "Spatial weight exponent");
  bourgain_cmd->add_option("--b", bourgain.b, "Temporal weight exponent");
  bourgain_cmd->add_option("--sigma-samples", bourgain.sigma_samples, "Quadrature nodes (default 2M)");
  bourgain_cmd->add_flag("--relaxed", bourgain.relaxed, "Allow M <= sigma_samples < 2M");
  bourgain_cmd->add_flag("--json", bourgain.json_out, "JSON output");

  RegimeArgs regime;
  auto* regime_cmd = app.add_subcommand("regime-check", "Check (d, s0, b0) against the convergence regime");
  regime_cmd->add_option("--dim", regime.dim, "Dimension 1..5")->required();
  regime_cmd->add_option("--s0", regime.s0, "Regularity s0")->required();
  regime_cmd->add_option("--b0", regime.b0, "Optional b0 to test");
  regime_cmd->add_flag("--json", regime.json_out, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*solve_cmd) return run_solve(solve);
    if (*converge_cmd) return run_converge(converge, threads);
    if (*local_cmd) return run_local(local, threads);
    if (*bourgain_cmd) return run_bourgain(bourgain);
    if (*regime_cmd) return run_regime(regime);
  } catch (const nlsfilt::ConfigError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitConfig;
  } catch (const nlsfilt::NumericalAbort& e) {
    fmt::print(stderr, "numerical abort: {}\n", e.what());
    return kExitNumerical;
  }
  return kExitConfig;
}

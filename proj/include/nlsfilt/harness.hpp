#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlsfilt/integrators.hpp"
#include "nlsfilt/regime.hpp"
#include "nlsfilt/spectral_field.hpp"

namespace nlsfilt {

inline constexpr const char* kVersion = "nlsfilt 1.0.0";

struct ReferenceRecipe {
  std::string method = "standard-lie";
  double tau_ref = 0x1p-16;
  int n_ref_per_axis = 0;  // 0: same as the plan grid
};

enum class InitialKind { rough, plane_wave, zero };

struct PlaneWaveSpec {
  std::vector<int> k;
  Complex amplitude{0.1, 0.0};
};

struct LocalErrorSettings {
  int fine_ratio = kDefaultFineRatio;
  std::vector<double> probe_times{0.0, 0.25, 0.5};
};

struct OutputPaths {
  std::string json;
  std::string csv;
};

struct ExperimentPlan {
  int dim = 1;
  int n_per_axis = 1024;
  std::vector<double> s{1.0};
  int mu = -1;
  double T = 1.0;
  std::vector<double> tau_ladder;
  ReferenceRecipe reference;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  double target_l2 = 0.1;
  double eps = 0.0;
  DealiasPolicy dealias = DealiasPolicy::warn;
  bool check_reference = true;
  InitialKind initial = InitialKind::rough;
  PlaneWaveSpec plane_wave;
  LocalErrorSettings local_error;
  OutputPaths output;

  // Throws ConfigError naming the offending field.
  void validate() const;
  TorusGrid grid() const { return TorusGrid(dim, n_per_axis); }
};

// Desk-scale d=1 plan: N=2^10, s=1, T=1, ladder 2^-6..2^-12, reference 2^-16.
ExperimentPlan desk_plan_1d();
// Desk-scale d=3 plan: N=2^5, s in {1, 2}, ladder 2^-5..2^-10, reference 2^-14.
ExperimentPlan desk_plan_3d();

SpectralField initial_field(const ExperimentPlan& plan, double s, std::uint64_t seed);

struct OrderSample {
  double tau = 0.0;
  double error = 0.0;
};

struct OrderFit {
  double slope = 0.0;
  double intercept = 0.0;  // log2 error at tau = 1
  double residual = 0.0;   // RMS of the log2 fit
};

// Least squares on (log2 tau, log2 error). Throws ConfigError for fewer than
// two samples or a nonpositive error or step.
OrderFit fit_order(std::span<const OrderSample> samples);

struct RegimeAnnotation {
  bool admissible = false;
  int table1_case = 0;
  std::string note;
};

RegimeAnnotation annotate_regime(int dim, double s);

struct ErrorSample {
  double tau = 0.0;
  double l2_error = 0.0;
  double l2_error_half_reference = 0.0;  // against the tau_ref/2 reference, when checked
  double max_mass_increase = 0.0;
  std::vector<std::string> warnings;
};

struct ConvergenceCurve {
  double s = 0.0;
  std::uint64_t seed = 0;
  double initial_l2 = 0.0;
  std::vector<ErrorSample> samples;  // plan ladder order
  std::string fit_status;            // "ok", "degenerate: exact family", "undefined: zero errors"
  std::optional<OrderFit> fit;
  double theoretical_slope = 0.0;
  RegimeAnnotation regime;
  bool reference_checked = false;
  bool reference_limited = false;
  double reference_shift = 0.0;        // max over the ladder of |error change| when halving tau_ref
  double reference_mass_drift = 0.0;   // |mass(T) - mass(0)| of the reference run
  double monotone_fraction = 0.0;      // adjacent pairs with nonincreasing error as tau decreases
  bool wiring_suspect = false;         // monotone_fraction < 0.8
};

struct ConvergenceReport {
  ExperimentPlan plan;
  std::vector<ConvergenceCurve> curves;  // plan order: s outer, seed inner
};

ConvergenceReport run_convergence(const ExperimentPlan& plan, unsigned threads);

struct DefectSample {
  double tau = 0.0;
  double defect = 0.0;         // mean over the probe states
  std::vector<double> probes;  // one per probe time
};

struct LocalErrorCurve {
  double s = 0.0;
  std::uint64_t seed = 0;
  std::vector<DefectSample> samples;
  std::string fit_status;
  std::optional<OrderFit> fit;
  double theoretical_slope = 0.0;  // 1 + s/2
  double max_mass_increase = 0.0;  // over the filtered trajectories feeding the probes
};

struct LocalErrorReport {
  ExperimentPlan plan;
  std::vector<LocalErrorCurve> curves;
  // The analytic local-error rate is stated in the X^{0,-b1}_tau norm; the
  // probe measures L2 and the slope comparison is heuristic.
  std::string norm_note = "L2 proxy: defect measured in L2, rate 1 + s/2 is stated for the X^{0,-b1}_tau norm";
};

LocalErrorReport run_local_error(const ExperimentPlan& plan, unsigned threads);

}  // namespace nlsfilt

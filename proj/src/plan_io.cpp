#include "nlsfilt/plan_io.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "nlsfilt/errors.hpp"

namespace nlsfilt {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw ConfigError("plan field '" + field + "': " + what);
}

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key())) bad(where.empty() ? it.key() : where + "." + it.key(), "unknown key");
  }
}

double step_value(const json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    static const std::regex pow2(R"(\s*2\s*\^\s*(-?\d+)\s*)");
    std::smatch m;
    const std::string text = v.get<std::string>();
    if (std::regex_match(text, m, pow2)) return std::ldexp(1.0, std::stoi(m[1].str()));
    bad(field, "expected a number or '2^-k', got '" + text + "'");
  }
  bad(field, "expected a number or '2^-k'");
}

template <typename T>
T get_as(const json& obj, const std::string& key, const std::string& field) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    bad(field, e.what());
  }
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json fit_json(const std::optional<OrderFit>& fit) {
  if (!fit) return nullptr;
  return {{"slope", fit->slope}, {"intercept", fit->intercept}, {"residual", fit->residual}};
}

std::string initial_kind_name(InitialKind k) {
  switch (k) {
    case InitialKind::rough: return "rough";
    case InitialKind::plane_wave: return "plane_wave";
    case InitialKind::zero: return "zero";
  }
  return "?";
}

json environment_json(const ExperimentPlan& plan) {
  return {{"library", kVersion},
          {"fft", std::string(fftw_version)},
          {"grid", {{"dim", plan.dim}, {"n_per_axis", plan.n_per_axis}}},
          {"seeds", plan.seeds},
          {"normalization", "u(x) = sum_k c_k exp(i<k,x>) on [0,2pi)^d; ||u||_L2 = (2pi)^(d/2) ||c||_l2"},
          {"rng", "splitmix64-counter"}};
}

}  // namespace

ExperimentPlan parse_plan(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based offset of the failing character.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("plan syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                      e.what());
  }
  if (!doc.is_object()) throw ConfigError("plan must be a JSON object");
  reject_unknown(doc, "",
                 {"dim", "n_per_axis", "s", "mu", "T", "tau_ladder", "reference", "seeds", "target_l2", "eps",
                  "dealias", "check_reference", "initial_data", "local_error", "output"});

  ExperimentPlan plan;
  for (const char* required : {"dim", "n_per_axis", "s", "tau_ladder", "reference"}) {
    if (!doc.contains(required)) bad(required, "missing required key");
  }
  plan.dim = get_as<int>(doc, "dim", "dim");
  plan.n_per_axis = get_as<int>(doc, "n_per_axis", "n_per_axis");
  plan.s = get_as<std::vector<double>>(doc, "s", "s");
  if (doc.contains("mu")) plan.mu = get_as<int>(doc, "mu", "mu");
  if (doc.contains("T")) plan.T = step_value(doc["T"], "T");
  if (!doc["tau_ladder"].is_array()) bad("tau_ladder", "expected an array");
  for (const auto& v : doc["tau_ladder"]) plan.tau_ladder.push_back(step_value(v, "tau_ladder"));

  const json& ref = doc["reference"];
  if (!ref.is_object()) bad("reference", "expected an object");
  reject_unknown(ref, "reference", {"method", "tau_ref", "n_ref_per_axis"});
  if (ref.contains("method")) plan.reference.method = get_as<std::string>(ref, "method", "reference.method");
  if (!ref.contains("tau_ref")) bad("reference.tau_ref", "missing required key");
  plan.reference.tau_ref = step_value(ref["tau_ref"], "reference.tau_ref");
  plan.reference.n_ref_per_axis = ref.contains("n_ref_per_axis")
                                      ? get_as<int>(ref, "n_ref_per_axis", "reference.n_ref_per_axis")
                                      : plan.n_per_axis;

  if (doc.contains("seeds")) plan.seeds = get_as<std::vector<std::uint64_t>>(doc, "seeds", "seeds");
  if (doc.contains("target_l2")) plan.target_l2 = get_as<double>(doc, "target_l2", "target_l2");
  if (doc.contains("eps")) plan.eps = get_as<double>(doc, "eps", "eps");
  if (doc.contains("dealias")) {
    try {
      plan.dealias = parse_dealias_policy(get_as<std::string>(doc, "dealias", "dealias"));
    } catch (const ConfigError& e) {
      bad("dealias", e.what());
    }
  }
  if (doc.contains("check_reference")) plan.check_reference = get_as<bool>(doc, "check_reference", "check_reference");

  if (doc.contains("initial_data")) {
    const json& init = doc["initial_data"];
    if (!init.is_object()) bad("initial_data", "expected an object");
    reject_unknown(init, "initial_data", {"kind", "k", "amplitude"});
    const auto kind = init.contains("kind") ? get_as<std::string>(init, "kind", "initial_data.kind") : "rough";
    if (kind == "rough") {
      plan.initial = InitialKind::rough;
    } else if (kind == "plane_wave") {
      plan.initial = InitialKind::plane_wave;
      if (!init.contains("k")) bad("initial_data.k", "missing required key for plane_wave");
      plan.plane_wave.k = get_as<std::vector<int>>(init, "k", "initial_data.k");
      if (init.contains("amplitude")) {
        const auto a = get_as<std::vector<double>>(init, "amplitude", "initial_data.amplitude");
        if (a.size() != 2) bad("initial_data.amplitude", "expected [re, im]");
        plan.plane_wave.amplitude = {a[0], a[1]};
      }
    } else if (kind == "zero") {
      plan.initial = InitialKind::zero;
    } else {
      bad("initial_data.kind", "expected rough, plane_wave or zero");
    }
  }

  if (doc.contains("local_error")) {
    const json& le = doc["local_error"];
    if (!le.is_object()) bad("local_error", "expected an object");
    reject_unknown(le, "local_error", {"fine_ratio", "probe_times"});
    if (le.contains("fine_ratio")) plan.local_error.fine_ratio = get_as<int>(le, "fine_ratio", "local_error.fine_ratio");
    if (le.contains("probe_times")) {
      plan.local_error.probe_times = get_as<std::vector<double>>(le, "probe_times", "local_error.probe_times");
    }
  }

  if (doc.contains("output")) {
    const json& out = doc["output"];
    if (!out.is_object()) bad("output", "expected an object");
    reject_unknown(out, "output", {"json", "csv"});
    if (out.contains("json")) plan.output.json = get_as<std::string>(out, "json", "output.json");
    if (out.contains("csv")) plan.output.csv = get_as<std::string>(out, "csv", "output.csv");
  }

  plan.validate();
  return plan;
}

ExperimentPlan load_plan(const std::string& path) { return parse_plan(read_text_file(path)); }

json plan_to_json(const ExperimentPlan& plan) {
  json init = {{"kind", initial_kind_name(plan.initial)}};
  if (plan.initial == InitialKind::plane_wave) {
    init["k"] = plan.plane_wave.k;
    init["amplitude"] = {plan.plane_wave.amplitude.real(), plan.plane_wave.amplitude.imag()};
  }
  return {{"dim", plan.dim},
          {"n_per_axis", plan.n_per_axis},
          {"s", plan.s},
          {"mu", plan.mu},
          {"T", plan.T},
          {"tau_ladder", plan.tau_ladder},
          {"reference",
           {{"method", plan.reference.method},
            {"tau_ref", plan.reference.tau_ref},
            {"n_ref_per_axis", plan.reference.n_ref_per_axis == 0 ? plan.n_per_axis : plan.reference.n_ref_per_axis}}},
          {"seeds", plan.seeds},
          {"target_l2", plan.target_l2},
          {"eps", plan.eps},
          {"dealias", to_string(plan.dealias)},
          {"check_reference", plan.check_reference},
          {"initial_data", init},
          {"local_error", {{"fine_ratio", plan.local_error.fine_ratio}, {"probe_times", plan.local_error.probe_times}}},
          {"output", {{"json", plan.output.json}, {"csv", plan.output.csv}}}};
}

json report_to_json(const ConvergenceReport& report) {
  json curves = json::array();
  for (const auto& c : report.curves) {
    json samples = json::array();
    for (const auto& e : c.samples) {
      json row = {{"tau", e.tau}, {"l2_error", e.l2_error}, {"max_mass_increase", e.max_mass_increase},
                  {"warnings", e.warnings}};
      if (c.reference_checked) row["l2_error_half_reference"] = e.l2_error_half_reference;
      samples.push_back(row);
    }
    curves.push_back({{"s", c.s},
                      {"seed", c.seed},
                      {"initial_l2", c.initial_l2},
                      {"samples", samples},
                      {"fit_status", c.fit_status},
                      {"fit", fit_json(c.fit)},
                      {"theoretical_slope", c.theoretical_slope},
                      {"regime", {{"admissible", c.regime.admissible},
                                  {"table1_case", c.regime.table1_case},
                                  {"note", c.regime.note}}},
                      {"reference_checked", c.reference_checked},
                      {"reference_limited", c.reference_limited},
                      {"reference_shift", c.reference_shift},
                      {"reference_mass_drift", c.reference_mass_drift},
                      {"monotone_fraction", c.monotone_fraction},
                      {"wiring_suspect", c.wiring_suspect}});
  }
  return {{"kind", "convergence"},
          {"plan", plan_to_json(report.plan)},
          {"environment", environment_json(report.plan)},
          {"curves", curves}};
}

std::string report_to_csv(const ConvergenceReport& report) {
  std::ostringstream out;
  out << "s,seed,tau,l2_error\n";
  for (const auto& c : report.curves) {
    for (const auto& e : c.samples) {
      out << csv_number(c.s) << ',' << c.seed << ',' << csv_number(e.tau) << ',' << csv_number(e.l2_error) << '\n';
    }
  }
  return out.str();
}

json local_report_to_json(const LocalErrorReport& report) {
  json curves = json::array();
  for (const auto& c : report.curves) {
    json samples = json::array();
    for (const auto& e : c.samples) samples.push_back({{"tau", e.tau}, {"defect", e.defect}, {"probes", e.probes}});
    curves.push_back({{"s", c.s},
                      {"seed", c.seed},
                      {"samples", samples},
                      {"fit_status", c.fit_status},
                      {"fit", fit_json(c.fit)},
                      {"theoretical_slope", c.theoretical_slope},
                      {"max_mass_increase", c.max_mass_increase}});
  }
  return {{"kind", "local_error"},
          {"plan", plan_to_json(report.plan)},
          {"environment", environment_json(report.plan)},
          {"norm_note", report.norm_note},
          {"curves", curves}};
}

std::string local_report_to_csv(const LocalErrorReport& report) {
  std::ostringstream out;
  out << "s,seed,tau,defect\n";
  for (const auto& c : report.curves) {
    for (const auto& e : c.samples) {
      out << csv_number(c.s) << ',' << c.seed << ',' << csv_number(e.tau) << ',' << csv_number(e.defect) << '\n';
    }
  }
  return out.str();
}

json regime_to_json(const RegimeResult& r) {
  const auto pair_json = [](const ExponentPair& p) {
    return json{{"p", p.p_str()}, {"q", p.q.str()}};
  };
  json cases = json::array();
  for (const auto& c : r.column.cases) cases.push_back(c.str());
  json out = {{"d", r.query.d},
              {"s0", r.query.s0},
              {"admissible", r.admissible},
              {"s0_condition", r.s0_condition},
              {"s0_lower", r.s0_lower},
              {"b0_interval", {{"lo", r.b0_lo}, {"hi", r.b0_hi}, {"open", true}, {"empty", r.b0_interval_empty}}},
              {"b0", r.query.b0 ? json(*r.query.b0) : json(nullptr)},
              {"b1", r.b1 ? json(*r.b1) : json(nullptr)},
              {"b0_in_interval", r.b0_in_interval ? json(*r.b0_in_interval) : json(nullptr)},
              {"table1_row",
               {{"case", r.table1_case},
                {"interval", r.case_interval ? json(r.case_interval->str()) : json(nullptr)},
                {"pair", r.case_pair ? pair_json(*r.case_pair) : json(nullptr)},
                {"cases", cases},
                {"standard_pair", pair_json(r.column.standard)},
                {"crude_pair", pair_json(r.column.crude)}}}};
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace nlsfilt

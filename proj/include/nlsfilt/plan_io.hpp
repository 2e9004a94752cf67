#pragma once

#include <string>

#include <json.hpp>

#include "nlsfilt/harness.hpp"

namespace nlsfilt {

// Plan file: a JSON object whose keys mirror ExperimentPlan (see
// docs/formats.md). Steps may be numbers or strings of the form "2^-k".
// Unknown keys are rejected. Throws ConfigError with the line/column of a
// syntax error or the name of the offending field.
ExperimentPlan parse_plan(const std::string& text);
ExperimentPlan load_plan(const std::string& path);
nlohmann::json plan_to_json(const ExperimentPlan& plan);

nlohmann::json report_to_json(const ConvergenceReport& report);
// Columns s,seed,tau,l2_error; one row per (curve, ladder step) in plan order.
std::string report_to_csv(const ConvergenceReport& report);

nlohmann::json local_report_to_json(const LocalErrorReport& report);
// Columns s,seed,tau,defect.
std::string local_report_to_csv(const LocalErrorReport& report);

nlohmann::json regime_to_json(const RegimeResult& r);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace nlsfilt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nlsfilt/field_io.hpp"
#include "nlsfilt/integrators.hpp"
#include "nlsfilt/plan_io.hpp"
#include "nlsfilt/spectral_ops.hpp"
#include "test_support.hpp"

using namespace nlsfilt;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

class Workdir {
 public:
  Workdir() : path_(fs::temp_directory_path() / ("nlsfilt_cli_test_" + std::to_string(::getpid()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~Workdir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

RunResult run(const Workdir& wd, const std::string& args) {
  const std::string out_file = wd.file("stdout.txt");
  const std::string cmd =
      "cd '" + wd.path().string() + "' && '" NLSFILT_CLI_PATH "' " + args + " > '" + out_file + "' 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::set<std::string> keys(const nlohmann::json& j) {
  std::set<std::string> k;
  for (const auto& [key, value] : j.items()) k.insert(key);
  return k;
}

const char* kSmallPlan = R"({
  "dim": 1, "n_per_axis": 32, "s": [1.0], "T": 1.0,
  "tau_ladder": ["2^-2", "2^-3", "2^-4", "2^-5"],
  "reference": {"method": "standard-lie", "tau_ref": "2^-8"},
  "seeds": [1]
})";

}  // namespace

TEST_CASE("help and subcommand requirements") {
  Workdir wd;
  CHECK(run(wd, "--help").code == 0);
  CHECK(run(wd, "").code == 2);
  CHECK(run(wd, "frobnicate").code == 2);
}

TEST_CASE("solve exit codes") {
  Workdir wd;
  CHECK(run(wd, "solve --dim 1 --n 64 --s 1 --tau 0.01 --T 0.1 --filtered").code == 0);
  CHECK(fs::exists(wd.file("state.bin")));
  CHECK(run(wd, "solve --dim 6 --n 8 --s 1 --tau 0.01 --T 0.1").code == 2);
  CHECK(run(wd, "solve --dim 1 --n 60 --s 1 --tau 0.01 --T 0.1").code == 2);
  CHECK(run(wd, "solve --dim 1 --n 64 --s 1 --tau 0.01 --T 0.105").code == 2);
  // cutoff 10 needs N/2 >= 20 under the strict dealias policy
  CHECK(run(wd, "solve --dim 1 --n 32 --s 1 --tau 0.01 --T 0.1 --filtered").code == 2);
  CHECK(run(wd, "solve --dim 1 --n 32 --s 1 --tau 0.01 --T 0.1 --filtered --dealias warn").code == 0);
  // amplitude above the blow-up bound aborts
  CHECK(run(wd, "solve --dim 1 --n 64 --s 1 --l2 1e8 --mu 1 --tau 0.5 --T 1").code == 3);
}

TEST_CASE("solve with T = 0 writes the projected input") {
  Workdir wd;
  const SpectralField u = testing::random_field(TorusGrid(1, 64), 3, 0.01);
  save_field(wd.file("in.bin"), u);
  REQUIRE(run(wd, "solve --init-file in.bin --tau 0.01 --T 0 --filtered --out out.json").code == 0);
  const SpectralField out = load_field(wd.file("out.json"));
  CHECK(out == apply_projector(u, FilterSpec(0.01)));
}

TEST_CASE("solve matches the library and reports monotone mass") {
  Workdir wd;
  const SpectralField u = testing::random_field(TorusGrid(1, 64), 9, 0.01);
  save_field(wd.file("in.bin"), u);
  const RunResult r = run(wd, "solve --init-file in.bin --tau 0.0625 --T 1 --filtered --json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(keys(j) == std::set<std::string>{"steps", "tau", "T", "mu", "filtered", "mass_input", "mass_start",
                                          "mass_end", "max_mass_increase", "warnings", "out"});
  CHECK(j["steps"] == 16);
  CHECK(j["mass_end"].get<double>() <= j["mass_start"].get<double>() + 1e-12);

  StepperConfig cfg;
  cfg.tau = 0.0625;
  cfg.filtered = true;
  cfg.grid = u.grid();
  const Trajectory traj = evolve(u, cfg, 16, 16);
  CHECK(load_field(wd.file("state.bin")) == traj.final_state());
}

TEST_CASE("converge dry run prints the plan and writes nothing") {
  Workdir wd;
  write_text_file(wd.file("plan.json"), kSmallPlan);
  const RunResult r = run(wd, "converge plan.json --dry-run");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["n_per_axis"] == 32);
  CHECK(!fs::exists(wd.file("convergence_report.json")));
  CHECK(!fs::exists(wd.file("convergence_report.csv")));
}

TEST_CASE("converge writes JSON and CSV reports") {
  Workdir wd;
  write_text_file(wd.file("plan.json"), kSmallPlan);
  REQUIRE(run(wd, "converge plan.json --seeds 1 2").code == 0);
  const auto j = nlohmann::json::parse(read_text_file(wd.file("convergence_report.json")));
  CHECK(keys(j) == std::set<std::string>{"kind", "plan", "environment", "curves"});
  REQUIRE(j["curves"].size() == 2);
  const std::string csv = read_text_file(wd.file("convergence_report.csv"));
  CHECK(csv.rfind("s,seed,tau,l2_error\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 4);
}

TEST_CASE("local-error writes its reports") {
  Workdir wd;
  write_text_file(wd.file("plan.json"), kSmallPlan);
  REQUIRE(run(wd, "local-error plan.json --out-json le.json --out-csv le.csv").code == 0);
  const auto j = nlohmann::json::parse(read_text_file(wd.file("le.json")));
  CHECK(j.contains("norm_note"));
  CHECK(read_text_file(wd.file("le.csv")).rfind("s,seed,tau,defect\n", 0) == 0);
}

TEST_CASE("malformed or invalid plans exit with code 2") {
  Workdir wd;
  write_text_file(wd.file("broken.json"), "{\n  \"dim\": 1,\n  \"n_per_axis\": ,\n}");
  CHECK(run(wd, "converge broken.json").code == 2);
  write_text_file(wd.file("unknown.json"), R"({"dim": 1, "n_per_axis": 32, "s": [1], "colour": 3,
    "tau_ladder": [0.25, 0.125, 0.0625, 0.03125], "reference": {"tau_ref": "2^-8"}})");
  CHECK(run(wd, "converge unknown.json --dry-run").code == 2);
  write_text_file(wd.file("badref.json"), R"({"dim": 1, "n_per_axis": 32, "s": [1],
    "tau_ladder": [0.25, 0.125, 0.0625, 0.03125], "reference": {"tau_ref": "2^-6"}})");
  CHECK(run(wd, "converge badref.json --dry-run").code == 2);
  CHECK(run(wd, "converge missing.json").code == 2);
}

TEST_CASE("bourgain-norm of a zero sequence is zero") {
  Workdir wd;
  SequenceSample seq;
  seq.tau = 0.1;
  for (int i = 0; i < 4; ++i) seq.fields.emplace_back(TorusGrid(1, 8));
  write_text_file(wd.file("seq.json"), sequence_to_json(seq).dump());
  const RunResult r = run(wd, "bourgain-norm seq.json --s 1 --b 0.5 --json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(keys(j) == std::set<std::string>{"value", "s", "b", "tau", "M", "sigma_samples"});
  CHECK(j["value"] == 0.0);
  CHECK(j["sigma_samples"] == 8);
  CHECK(run(wd, "bourgain-norm seq.json --sigma-samples 5").code == 2);
  CHECK(run(wd, "bourgain-norm seq.json --sigma-samples 5 --relaxed").code == 0);
}

TEST_CASE("regime-check output") {
  Workdir wd;
  const RunResult r = run(wd, "regime-check --dim 3 --s0 1 --json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["admissible"] == true);
  CHECK(j["b0_interval"]["lo"] == 0.5);
  CHECK(j["b0_interval"]["hi"] == 0.625);
  CHECK(j["table1_row"]["case"] == 2);
  const RunResult bad = run(wd, "regime-check --dim 5 --s0 1.4");
  CHECK(bad.code == 0);
  CHECK(bad.out.find("inadmissible") != std::string::npos);
  CHECK(run(wd, "regime-check --dim 7 --s0 1").code == 2);
}

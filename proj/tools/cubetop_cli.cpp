#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubetop/cubetop.h"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    std::exit(2);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    std::exit(2);
  }
  out << text;
}

// Reports signal problems in-band; the process exit code must follow.
int report_exit_code(const std::string& report) {
  nlohmann::json j = nlohmann::json::parse(report, nullptr, false);
  if (j.is_discarded()) return 0;
  if (j.value("failures", 0) > 0) return 1;
  if (j.value("mismatches", 0) > 0) return 1;
  if (j.value("status", "ok") != "ok") return 1;
  return 0;
}

int fail(ct_status st) {
  std::cerr << "error: " << ct_last_error() << "\n";
  return static_cast<int>(st);
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  ~Timer() {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::cerr << "elapsed_ms=" << ms << "\n";
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(ct_version()) +
               " — connectivity and separation analysis on subdivided unit cubes"};
  app.require_subcommand(1);

  std::string in_path, out_path, mode = "plain";
  int n = 2, k = 2, axis = 1, jobs = 0, verify_k = 0;
  long long max_enum = 0, trials = 0;
  unsigned long long seed = 0;
  bool generalized = false, exhaustive = false;
  std::vector<int> axes, kschedule;
  double dp = 0.01;
  std::string field_out;

  auto* witness = app.add_subcommand("witness", "witness chain for a colored grid");
  witness->add_option("labeling", in_path, "labeling JSON file")->required();
  witness->add_flag("--generalized", generalized, "raise link thresholds to color-1");
  witness->add_option("--out", out_path, "report path (default stdout)");

  auto* verify = app.add_subcommand("verify", "sweep all instances of a witness theorem");
  verify->add_option("--n", n, "dimension")->required();
  verify->add_option("--k", k, "subdivisions per axis")->required();
  verify->add_option("--mode", mode, "plain|generalized|lebesgue|level");
  verify->add_option("--max-enum", max_enum, "exhaustive enumeration guard (default 1e7)");
  verify->add_option("--seed", seed, "seed for randomized sweeps");
  verify->add_option("--trials", trials, "randomized trial count (0 = exhaustive)");
  verify->add_option("--jobs", jobs, "worker threads (0 = hardware)");
  verify->add_option("--out", out_path, "report path");

  auto* level = app.add_subcommand("level", "connecting/separating level of an integer field");
  level->add_option("field", in_path, "integer field JSON file")->required();
  level->add_option("--axis", axis, "axis in [1, n]")->required();
  level->add_option("--out", out_path, "report path");

  std::vector<double> extra_levels;
  auto* analyze = app.add_subcommand("analyze", "certified level-set bracketing");
  analyze->add_option("field", in_path, "scalar field JSON file")->required();
  analyze->add_option("--axes", axes, "axes to analyze (default all)");
  analyze->add_option("--kschedule", kschedule, "ascending grid resolutions");
  analyze->add_option("--dp", dp, "level scan resolution");
  analyze->add_option("--levels", extra_levels, "extra levels probed beyond the dp lattice");
  analyze->add_option("--jobs", jobs, "worker threads");
  analyze->add_option("--out", out_path, "report path");

  auto* synthesize = app.add_subcommand("synthesize", "build a field with prescribed level sets");
  synthesize->add_option("spec", in_path, "prescription JSON file")->required();
  synthesize->add_option("--out", field_out, "synthesized field path");
  synthesize->add_option("--verify-k", verify_k, "round-trip analysis resolution");
  synthesize->add_option("--dp", dp, "round-trip scan resolution");
  synthesize->add_option("--report-out", out_path, "report path");

  auto* oracle = app.add_subcommand("oracle-check", "fast engine vs face-lattice reference");
  oracle->add_option("--n", n, "dimension")->required();
  oracle->add_option("--k", k, "subdivisions per axis")->required();
  oracle->add_flag("--exhaustive", exhaustive, "all cell sets");
  oracle->add_option("--trials", trials, "randomized trial count");
  oracle->add_option("--seed", seed, "seed for randomized trials");
  oracle->add_option("--out", out_path, "report path");

  CLI11_PARSE(app, argc, argv);
  Timer timer;

  char* report = nullptr;
  ct_status st = CT_OK;

  if (witness->parsed()) {
    st = ct_witness(slurp(in_path).c_str(), generalized ? 1 : 0, &report);
  } else if (verify->parsed()) {
    st = ct_verify(n, k, mode.c_str(), max_enum, seed, trials, jobs, &report);
  } else if (level->parsed()) {
    st = ct_level(slurp(in_path).c_str(), axis, &report);
  } else if (analyze->parsed()) {
    nlohmann::json opts;
    if (!axes.empty()) opts["axes"] = axes;
    if (!kschedule.empty()) opts["k_schedule"] = kschedule;
    if (!extra_levels.empty()) opts["levels"] = extra_levels;
    opts["dp"] = dp;
    opts["jobs"] = jobs;
    ct_field* field = nullptr;
    st = ct_field_parse(slurp(in_path).c_str(), &field);
    if (st == CT_OK) {
      st = ct_analyze(field, opts.dump().c_str(), &report);
      ct_field_free(field);
    }
  } else if (synthesize->parsed()) {
    char* field_json = nullptr;
    st = ct_synthesize(slurp(in_path).c_str(), &field_json, &report);
    if (st != CT_OK) {
      if (report) {
        emit(report, out_path);
        ct_string_free(report);
        return 1;
      }
      return fail(st);
    }
    if (!field_out.empty()) {
      emit(field_json, field_out);
    }
    std::string combined = report;
    ct_string_free(report);
    report = nullptr;
    if (verify_k > 0) {
      nlohmann::json opts;
      opts["k_schedule"] = std::vector<int>{verify_k};
      opts["dp"] = dp;
      ct_field* field = nullptr;
      st = ct_field_parse(field_json, &field);
      char* round_trip = nullptr;
      if (st == CT_OK) {
        st = ct_analyze(field, opts.dump().c_str(), &round_trip);
        ct_field_free(field);
      }
      ct_string_free(field_json);
      if (st != CT_OK) return fail(st);
      combined += round_trip;
      ct_string_free(round_trip);
    } else {
      ct_string_free(field_json);
    }
    emit(combined, out_path);
    return 0;
  } else if (oracle->parsed()) {
    if (!exhaustive && trials <= 0) {
      std::cerr << "error: pass --exhaustive or --trials N\n";
      return 2;
    }
    st = ct_oracle_check(n, k, exhaustive ? 1 : 0, seed, exhaustive ? 0 : trials, &report);
  }

  if (st != CT_OK) return fail(st);
  std::string text = report;
  ct_string_free(report);
  emit(text, out_path);
  return report_exit_code(text);
}

#include "cubetop/cubetop.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "io.hpp"
#include "util.hpp"

using namespace cubetop;

struct ct_cellset {
  CellSet set;
  explicit ct_cellset(CellSet s) : set(std::move(s)) {}
};

struct ct_field {
  ScalarField field;
  std::string digest;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
ct_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return CT_OK;
  } catch (const UsageError& e) {
    g_last_error = e.what();
    return std::strncmp(e.what(), "parse error", 11) == 0 ? CT_ERROR_PARSE : CT_ERROR_USAGE;
  } catch (const GuardError& e) {
    g_last_error = e.what();
    return CT_ERROR_GUARD;
  } catch (const SoundnessError& e) {
    g_last_error = e.what();
    return CT_ERROR_SOUNDNESS;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CT_ERROR_INTERNAL;
  }
}

ct_status need(bool ok, const char* message) {
  if (ok) return CT_OK;
  g_last_error = message;
  return CT_ERROR_USAGE;
}

}  // namespace

extern "C" {

const char* ct_version(void) { return "cubetop 1.0.0"; }

const char* ct_last_error(void) { return g_last_error.c_str(); }

void ct_string_free(char* s) { std::free(s); }

ct_status ct_cellset_parse(const char* json, ct_cellset** out) {
  if (ct_status st = need(json && out, "null argument")) return st;
  return guarded([&] { *out = new ct_cellset(io::parse_cellset(json)); });
}

void ct_cellset_free(ct_cellset* s) { delete s; }

ct_status ct_cellset_connects(const ct_cellset* s, int axis, int min_dim, int* present,
                              char** chain_json) {
  if (ct_status st = need(s && present, "null argument")) return st;
  return guarded([&] {
    auto chain = connects(s->set, axis, min_dim);
    *present = chain.has_value() ? 1 : 0;
    if (chain && chain_json) *chain_json = dup_string(io::chain_json(*chain));
  });
}

ct_status ct_cellset_separates(const ct_cellset* s, int axis, int* present,
                               char** certificate_json) {
  if (ct_status st = need(s && present, "null argument")) return st;
  return guarded([&] {
    auto cert = separates(s->set, axis);
    *present = cert.has_value() ? 1 : 0;
    if (cert && certificate_json) *certificate_json = dup_string(io::certificate_json(*cert));
  });
}

ct_status ct_field_parse(const char* json, ct_field** out) {
  if (ct_status st = need(json && out, "null argument")) return st;
  return guarded([&] {
    std::string text(json);
    *out = new ct_field{io::parse_field(text), io::digest_hex(text)};
  });
}

void ct_field_free(ct_field* f) { delete f; }

ct_status ct_field_eval(const ct_field* f, const double* x, int n, double* value) {
  if (ct_status st = need(f && x && value, "null argument")) return st;
  return guarded([&] { *value = field_eval(f->field, std::vector<double>(x, x + n)); });
}

ct_status ct_analyze(const ct_field* f, const char* options_json, char** report) {
  if (ct_status st = need(f && report, "null argument")) return st;
  return guarded([&] {
    AnalysisOptions opts;
    if (options_json && *options_json) {
      nlohmann::json j = nlohmann::json::parse(options_json, nullptr, false);
      if (j.is_discarded()) throw UsageError("parse error: malformed options JSON");
      if (j.contains("axes")) opts.axes = j["axes"].get<std::vector<int>>();
      if (j.contains("k_schedule")) opts.k_schedule = j["k_schedule"].get<std::vector<int>>();
      if (j.contains("dp")) opts.dp = j["dp"].get<double>();
      if (j.contains("levels")) opts.extra_levels = j["levels"].get<std::vector<double>>();
      if (j.contains("jobs")) opts.jobs = j["jobs"].get<int>();
    }
    AnalysisResult res = bracket_sets(f->field, opts);
    *report = dup_string(io::analyze_report(f->digest, res));
  });
}

ct_status ct_witness(const char* labeling_json, int generalized, char** report) {
  if (ct_status st = need(labeling_json && report, "null argument")) return st;
  return guarded([&] {
    std::string text(labeling_json);
    Labeling lab = io::parse_labeling(text);
    WitnessResult w = steinhaus_witness(lab, generalized != 0);
    verify_chain(w.chain, color_class(lab, w.axis));
    *report = dup_string(io::witness_report(io::digest_hex(text), generalized != 0, w));
  });
}

ct_status ct_verify(int n, int k, const char* mode, long long max_enum, unsigned long long seed,
                    long long trials, int jobs, char** report) {
  if (ct_status st = need(mode && report, "null argument")) return st;
  return guarded([&] {
    VerifyMode m = parse_verify_mode(mode);
    GridSpec spec{n, k};
    VerifyReport rep = trials > 0
                           ? randomized_verify(spec, m, seed, trials, jobs)
                           : exhaustive_verify(spec, m, max_enum > 0 ? max_enum : 10'000'000, jobs);
    *report = dup_string(io::verify_report(rep));
  });
}

ct_status ct_level(const char* integer_field_json, int axis, char** report) {
  if (ct_status st = need(integer_field_json && report, "null argument")) return st;
  return guarded([&] {
    std::string text(integer_field_json);
    IntegerField f = io::parse_integer_field(text);
    LevelResult r = separating_level(f, axis);
    *report = dup_string(io::level_report(io::digest_hex(text), axis, r));
  });
}

ct_status ct_synthesize(const char* spec_json, char** field_json, char** report) {
  if (ct_status st = need(spec_json && field_json && report, "null argument")) return st;
  *field_json = nullptr;
  return guarded([&] {
    std::string text(spec_json);
    ConnSepSpec spec = io::parse_conn_sep(text);
    std::string digest = io::digest_hex(text);
    if (auto v = validate_conn_sep(spec)) {
      *report = dup_string(io::violation_report(digest, *v));
      throw UsageError("prescription rejected: condition " + std::to_string(v->condition));
    }
    SynthesizedField f = build_function(spec);
    *field_json = dup_string(io::synthesized_to_json(f));
    *report = dup_string(io::synthesize_report(digest, f, ""));
  });
}

ct_status ct_oracle_check(int n, int k, int exhaustive, unsigned long long seed, long long trials,
                          char** report) {
  if (ct_status st = need(report != nullptr, "null argument")) return st;
  return guarded([&] {
    oracle::EquivalenceReport rep =
        oracle::equivalence_check({n, k}, exhaustive != 0, seed, trials);
    *report = dup_string(io::equivalence_report(rep));
  });
}

}  // extern "C"

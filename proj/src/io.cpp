#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "util.hpp"

namespace cubetop::io {

using nlohmann::ordered_json;

namespace {

std::string dec(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

ordered_json parse_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) throw UsageError("parse error: malformed JSON");
  return j;
}

ordered_json require(const ordered_json& j, const char* key) {
  if (!j.contains(key)) throw UsageError(std::string("parse error: missing field '") + key + "'");
  return j.at(key);
}

GridSpec parse_grid(const ordered_json& j) {
  GridSpec spec;
  spec.n = require(j, "n").get<int>();
  spec.k = require(j, "k").get<int>();
  validate_spec(spec);
  return spec;
}

ordered_json cell_to_json(const Cell& c) { return ordered_json(c); }

Cell cell_from_json(const ordered_json& j, const GridSpec& spec) {
  if (!j.is_array()) throw UsageError("parse error: cell must be an index array");
  Cell c = j.get<Cell>();
  validate_cell(spec, c);
  return c;
}

ordered_json chain_to_json(const Chain& chain) {
  ordered_json j;
  j["axis"] = chain.axis;
  j["threshold"] = chain.threshold;
  ordered_json cells = ordered_json::array();
  for (const Cell& c : chain.cells) cells.push_back(cell_to_json(c));
  j["cells"] = cells;
  j["link_dims"] = chain.link_dims;
  return j;
}

ordered_json certificate_to_json(const SeparationCertificate& cert) {
  ordered_json j;
  j["axis"] = cert.axis;
  ordered_json comps = ordered_json::array();
  for (const auto& comp : cert.components) {
    ordered_json cj = ordered_json::array();
    for (const Cell& c : comp) cj.push_back(cell_to_json(c));
    comps.push_back(cj);
  }
  j["components"] = comps;
  j["touching_minus"] = cert.touching_minus;
  j["touching_plus"] = cert.touching_plus;
  return j;
}

ExprPtr expr_from_json(const ordered_json& j) {
  std::string op = require(j, "op").get<std::string>();
  if (op == "const") return expr_const(require(j, "value").get<double>());
  if (op == "coord") return expr_coord(require(j, "axis").get<int>());
  if (op == "abs") return expr_abs(expr_from_json(require(j, "arg")));
  if (op == "segdist")
    return expr_segdist(require(j, "a").get<std::vector<double>>(),
                        require(j, "b").get<std::vector<double>>());
  if (op == "pwl") {
    std::vector<std::pair<double, double>> knots;
    for (const auto& kn : require(j, "knots")) {
      if (!kn.is_array() || kn.size() != 2) throw UsageError("parse error: knot must be [x, y]");
      knots.emplace_back(kn[0].get<double>(), kn[1].get<double>());
    }
    return expr_pwl(expr_from_json(require(j, "arg")), std::move(knots));
  }
  ordered_json args = require(j, "args");
  if (!args.is_array() || args.size() != 2)
    throw UsageError("parse error: '" + op + "' needs two args");
  ExprPtr a = expr_from_json(args[0]);
  ExprPtr b = expr_from_json(args[1]);
  if (op == "add") return expr_add(a, b);
  if (op == "sub") return expr_sub(a, b);
  if (op == "mul") return expr_mul(a, b);
  if (op == "min") return expr_min(a, b);
  if (op == "max") return expr_max(a, b);
  throw UsageError("parse error: unknown expression op '" + op + "'");
}

ordered_json expr_to_json(const Expr& e) {
  ordered_json j;
  switch (e.op) {
    case Expr::Op::constant:
      j["op"] = "const";
      j["value"] = e.value;
      break;
    case Expr::Op::coord:
      j["op"] = "coord";
      j["axis"] = e.axis;
      break;
    case Expr::Op::absolute:
      j["op"] = "abs";
      j["arg"] = expr_to_json(*e.args[0]);
      break;
    case Expr::Op::segdist:
      j["op"] = "segdist";
      j["a"] = e.seg_a;
      j["b"] = e.seg_b;
      break;
    case Expr::Op::pwl: {
      j["op"] = "pwl";
      j["arg"] = expr_to_json(*e.args[0]);
      ordered_json knots = ordered_json::array();
      for (const auto& kn : e.knots) knots.push_back({kn.first, kn.second});
      j["knots"] = knots;
      break;
    }
    case Expr::Op::add:
    case Expr::Op::sub:
    case Expr::Op::mul:
    case Expr::Op::minimum:
    case Expr::Op::maximum: {
      const char* name = e.op == Expr::Op::add   ? "add"
                         : e.op == Expr::Op::sub ? "sub"
                         : e.op == Expr::Op::mul ? "mul"
                         : e.op == Expr::Op::minimum ? "min"
                                                     : "max";
      j["op"] = name;
      j["args"] = {expr_to_json(*e.args[0]), expr_to_json(*e.args[1])};
      break;
    }
  }
  return j;
}

SetSpec set_from_json(const ordered_json& j) {
  if (j.is_null()) return SetSpec::none();
  if (j.is_number()) return SetSpec::point(j.get<double>());
  if (j.is_array() && j.size() == 2) {
    double lo = j[0].get<double>(), hi = j[1].get<double>();
    if (lo == hi) return SetSpec::point(lo);
    SetSpec s;
    s.kind = SetSpec::Kind::interval;
    s.lo = lo;
    s.hi = hi;
    return s;
  }
  throw UsageError("parse error: prescribed set must be null, a number, or [lo, hi]");
}

ordered_json intervals_to_json(const std::vector<CertInterval>& ivs) {
  ordered_json out = ordered_json::array();
  for (const CertInterval& iv : ivs) out.push_back({dec(iv.lo), dec(iv.hi)});
  return out;
}

}  // namespace

Labeling parse_labeling(const std::string& text) {
  ordered_json j = parse_json(text);
  Labeling lab{parse_grid(j), require(j, "labels").get<std::vector<int>>()};
  validate_labeling(lab);
  return lab;
}

CellSet parse_cellset(const std::string& text) {
  ordered_json j = parse_json(text);
  GridSpec spec = parse_grid(j);
  CellSet s(spec);
  for (const auto& cj : require(j, "cells")) s.insert(cell_from_json(cj, spec));
  return s;
}

IntegerField parse_integer_field(const std::string& text) {
  ordered_json j = parse_json(text);
  IntegerField f{parse_grid(j), require(j, "values").get<std::vector<long long>>()};
  validate_integer_field(f);
  return f;
}

ScalarField parse_field(const std::string& text) {
  ordered_json j = parse_json(text);
  std::string type = require(j, "type").get<std::string>();
  if (type == "vertex") {
    VertexField f{parse_grid(j), require(j, "values").get<std::vector<double>>()};
    validate_vertex_field(f);
    return f;
  }
  if (type == "expr") {
    ExprField f{require(j, "n").get<int>(), expr_from_json(require(j, "expr"))};
    validate_expr_field(f);
    return f;
  }
  throw UsageError("parse error: field type must be 'vertex' or 'expr'");
}

ConnSepSpec parse_conn_sep(const std::string& text) {
  ordered_json j = parse_json(text);
  ConnSepSpec s;
  s.n = require(j, "n").get<int>();
  ordered_json a = require(j, "A"), b = require(j, "B");
  if (!a.is_array() || !b.is_array() || static_cast<int>(a.size()) != s.n ||
      static_cast<int>(b.size()) != s.n)
    throw UsageError("parse error: A and B must list one set per axis");
  for (const auto& e : a) s.conn.push_back(set_from_json(e));
  for (const auto& e : b) s.sep.push_back(set_from_json(e));
  return s;
}

std::string field_to_json(const ScalarField& f) {
  ordered_json j;
  if (const auto* vf = std::get_if<VertexField>(&f)) {
    j["type"] = "vertex";
    j["n"] = vf->spec.n;
    j["k"] = vf->spec.k;
    j["values"] = vf->values;
  } else {
    const auto& ef = std::get<ExprField>(f);
    j["type"] = "expr";
    j["n"] = ef.n;
    j["expr"] = expr_to_json(*ef.expr);
  }
  return j.dump(2) + "\n";
}

std::string synthesized_to_json(const SynthesizedField& f) {
  ordered_json j;
  j["type"] = "expr";
  j["n"] = f.field.n;
  j["expr"] = expr_to_json(*f.field.expr);
  ordered_json prov;
  prov["branch"] = branch_name(f.branch);
  prov["permutation"] = f.permutation;
  prov["lipschitz"] = dec(f.lipschitz);
  prov["elements"] = f.elements;
  j["provenance"] = prov;
  return j.dump(2) + "\n";
}

std::string cellset_to_json(const CellSet& s) {
  ordered_json j;
  j["n"] = s.spec().n;
  j["k"] = s.spec().k;
  ordered_json cells = ordered_json::array();
  for (const Cell& c : s.cells()) cells.push_back(cell_to_json(c));
  j["cells"] = cells;
  return j.dump(2) + "\n";
}

std::string chain_json(const Chain& chain) { return chain_to_json(chain).dump(2) + "\n"; }

std::string certificate_json(const SeparationCertificate& cert) {
  return certificate_to_json(cert).dump(2) + "\n";
}

std::string digest_hex(const std::string& bytes) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(bytes)));
  return buf;
}

std::string witness_report(const std::string& digest, bool generalized, const WitnessResult& w) {
  ordered_json j;
  j["command"] = "witness";
  j["input"] = digest;
  j["generalized"] = generalized;
  j["axis"] = w.axis;
  j["chain"] = chain_to_json(w.chain);
  return j.dump(2) + "\n";
}

std::string verify_report(const VerifyReport& rep) {
  ordered_json j;
  j["command"] = "verify";
  j["mode"] = verify_mode_name(rep.mode);
  j["n"] = rep.spec.n;
  j["k"] = rep.spec.k;
  j["exhaustive"] = rep.exhaustive;
  j["candidates"] = rep.candidates;
  j["total"] = rep.total;
  j["failures"] = rep.failures;
  j["histogram"] = rep.histogram;
  j["max_chain_length"] = rep.max_chain_length;
  if (!rep.exhaustive) {
    j["seed"] = rep.seed;
    j["trials"] = rep.trials;
  }
  return j.dump(2) + "\n";
}

std::string level_report(const std::string& digest, int axis, const LevelResult& r) {
  ordered_json j;
  j["command"] = "level";
  j["input"] = digest;
  j["axis"] = axis;
  j["branch"] = r.connecting ? "connecting" : "separating";
  j["level"] = r.level;
  if (r.chain) j["chain"] = chain_to_json(*r.chain);
  if (r.certificate) j["certificate"] = certificate_to_json(*r.certificate);
  return j.dump(2) + "\n";
}

std::string analyze_report(const std::string& digest, const AnalysisResult& r) {
  ordered_json j;
  j["command"] = "analyze";
  j["input"] = digest;
  j["axes"] = r.axes;
  j["k_schedule"] = r.k_schedule;
  j["dp"] = dec(r.dp);
  j["levels_scanned"] = r.levels.size();
  ordered_json per_k = ordered_json::array();
  for (std::size_t ki = 0; ki < r.k_schedule.size(); ++ki) {
    ordered_json kj;
    kj["k"] = r.k_schedule[ki];
    ordered_json axes = ordered_json::array();
    for (std::size_t ai = 0; ai < r.axes.size(); ++ai) {
      ordered_json aj;
      aj["axis"] = r.axes[ai];
      aj["conn_in"] = intervals_to_json(r.intervals[ki][ai].conn_in);
      aj["conn_out"] = intervals_to_json(r.intervals[ki][ai].conn_out);
      aj["sep_in"] = intervals_to_json(r.intervals[ki][ai].sep_in);
      aj["sep_out"] = intervals_to_json(r.intervals[ki][ai].sep_out);
      axes.push_back(aj);
    }
    kj["axes"] = axes;
    per_k.push_back(kj);
  }
  j["per_k"] = per_k;
  ordered_json warnings = ordered_json::array();
  for (std::size_t ai = 0; ai < r.axes.size(); ++ai) {
    const AxisCertified& fin = r.intervals.back()[ai];
    if (fin.conn_in.empty() && fin.sep_in.empty())
      warnings.push_back("axis " + std::to_string(r.axes[ai]) +
                         " undetermined: no positive certificates at k=" +
                         std::to_string(r.k_schedule.back()));
  }
  j["warnings"] = warnings;
  return j.dump(2) + "\n";
}

std::string synthesize_report(const std::string& digest, const SynthesizedField& f,
                              const std::string& out_path) {
  ordered_json j;
  j["command"] = "synthesize";
  j["input"] = digest;
  j["status"] = "ok";
  j["branch"] = branch_name(f.branch);
  j["permutation"] = f.permutation;
  j["lipschitz"] = dec(f.lipschitz);
  j["elements"] = f.elements;
  if (!out_path.empty()) j["out"] = out_path;
  return j.dump(2) + "\n";
}

std::string violation_report(const std::string& digest, const Violation& v) {
  ordered_json j;
  j["command"] = "synthesize";
  j["input"] = digest;
  j["status"] = "violation";
  j["condition"] = v.condition;
  if (v.axis) j["axis"] = v.axis;
  j["detail"] = v.detail;
  return j.dump(2) + "\n";
}

std::string equivalence_report(const oracle::EquivalenceReport& rep) {
  ordered_json j;
  j["command"] = "oracle-check";
  j["n"] = rep.spec.n;
  j["k"] = rep.spec.k;
  j["exhaustive"] = rep.exhaustive;
  j["instances"] = rep.instances;
  j["mismatches"] = rep.mismatches;
  if (!rep.exhaustive) j["seed"] = rep.seed;
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << content;
}

}  // namespace cubetop::io

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scalar_field.hpp"

namespace cubetop {

// Prescribed compact subset of [0,1] for one axis.
struct SetSpec {
  enum class Kind { empty, point, interval };
  Kind kind = Kind::empty;
  double lo = 0, hi = 0;  // point: lo == hi; interval: lo < hi

  static SetSpec none() { return {}; }
  static SetSpec point(double v) { return {Kind::point, v, v}; }
  static SetSpec interval(double lo, double hi) { return {Kind::interval, lo, hi}; }

  bool empty() const { return kind == Kind::empty; }
  bool operator==(const SetSpec&) const = default;
};

// Prescription: per axis i, the wanted connect set A_i and separate set
// B_i of the synthesized field's levels.
struct ConnSepSpec {
  int n = 2;
  std::vector<SetSpec> conn;  // A_i
  std::vector<SetSpec> sep;   // B_i
};

struct Violation {
  int condition = 0;  // 1..5
  int axis = 0;       // 0 when not tied to one axis
  std::string detail;
};

// Checks the admissibility conditions in order:
//   1. each prescribed set well-formed with endpoints in [0,1]
//   2. A empty -> B nondegenerate; A point -> B == A; A interval -> B empty
//   3. B_i contained in the intersection of the other A_j
//   4. all A nonempty -> common point exists
//   5. n == 2 -> A and B swap across the two axes
// Returns the first violation, or nothing when admissible.
std::optional<Violation> validate_conn_sep(const ConnSepSpec& s);

enum class SynthesisBranch { constant, linear, empty_axis, all_nonempty };

std::string branch_name(SynthesisBranch b);

struct SynthesizedField {
  ExprField field;
  SynthesisBranch branch = SynthesisBranch::constant;
  // construction coordinate c acts on original axis permutation[c-1]
  std::vector<int> permutation;
  std::vector<std::string> elements;  // geometric pieces, for provenance dumps
  double lipschitz = 0;               // bound from the ramp slopes
};

// Builds the explicit continuous field realizing the prescription: a
// constant, a linear ramp, or a base level overlaid with slab and tube
// ramps whose supports are pairwise disjoint (checked at build time).
SynthesizedField build_function(const ConnSepSpec& s);

double evaluate(const SynthesizedField& f, const std::vector<double>& x);

}  // namespace cubetop

#include "synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cubetop {

namespace {

// Compact-interval intersection; nullopt when empty.
std::optional<SetSpec> intersect(const std::optional<SetSpec>& a, const SetSpec& b) {
  if (!a || a->empty() || b.empty()) return std::nullopt;
  double lo = std::max(a->lo, b.lo);
  double hi = std::min(a->hi, b.hi);
  if (lo > hi) return std::nullopt;
  return lo == hi ? SetSpec::point(lo) : SetSpec::interval(lo, hi);
}

bool subset_of(const SetSpec& inner, const std::optional<SetSpec>& outer) {
  if (inner.empty()) return true;
  if (!outer || outer->empty()) return false;
  return outer->lo <= inner.lo && inner.hi <= outer->hi;
}

double segment_segment_dist(const std::vector<double>& a0, const std::vector<double>& a1,
                            const std::vector<double>& b0, const std::vector<double>& b1) {
  // Dense parameter sampling refined around the best pair; adequate here
  // because the checked segments are axis-parallel (the true distance is
  // attained on a flat region or single point).
  auto at = [](const std::vector<double>& p, const std::vector<double>& q, double t) {
    std::vector<double> r(p.size());
    for (std::size_t s = 0; s < p.size(); ++s) r[s] = p[s] + t * (q[s] - p[s]);
    return r;
  };
  auto dist = [](const std::vector<double>& p, const std::vector<double>& q) {
    double acc = 0;
    for (std::size_t s = 0; s < p.size(); ++s) acc += (p[s] - q[s]) * (p[s] - q[s]);
    return std::sqrt(acc);
  };
  double best = std::numeric_limits<double>::infinity();
  double bt = 0, bu = 0;
  const int grid = 64;
  for (int i = 0; i <= grid; ++i)
    for (int j = 0; j <= grid; ++j) {
      double t = static_cast<double>(i) / grid, u = static_cast<double>(j) / grid;
      double d = dist(at(a0, a1, t), at(b0, b1, u));
      if (d < best) {
        best = d;
        bt = t;
        bu = u;
      }
    }
  double span = 1.0 / grid;
  for (int round = 0; round < 20; ++round) {
    for (int i = -2; i <= 2; ++i)
      for (int j = -2; j <= 2; ++j) {
        double t = std::clamp(bt + i * span / 2, 0.0, 1.0);
        double u = std::clamp(bu + j * span / 2, 0.0, 1.0);
        double d = dist(at(a0, a1, t), at(b0, b1, u));
        if (d < best) {
          best = d;
          bt = t;
          bu = u;
        }
      }
    span /= 2;
  }
  return best;
}

std::string set_to_string(const SetSpec& s) {
  std::ostringstream os;
  switch (s.kind) {
    case SetSpec::Kind::empty: os << "empty"; break;
    case SetSpec::Kind::point: os << "{" << s.lo << "}"; break;
    case SetSpec::Kind::interval: os << "[" << s.lo << ", " << s.hi << "]"; break;
  }
  return os.str();
}

struct Tube {
  std::vector<double> a, b;  // segment endpoints
  double r_half = 0, r_full = 0;
  double v_axis = 0, v_mid = 0, v_outer = 0;  // values at distance 0, r_half, >= r_full
};

ExprPtr tube_term(const Tube& t) {
  return expr_pwl(expr_segdist(t.a, t.b),
                  {{0.0, t.v_axis}, {t.r_half, t.v_mid}, {t.r_full, t.v_outer}});
}

void check_tubes_disjoint(const std::vector<Tube>& tubes) {
  for (std::size_t i = 0; i < tubes.size(); ++i)
    for (std::size_t j = i + 1; j < tubes.size(); ++j) {
      double d = segment_segment_dist(tubes[i].a, tubes[i].b, tubes[j].a, tubes[j].b);
      if (d <= tubes[i].r_full + tubes[j].r_full)
        throw SoundnessError("tube supports overlap: segment distance " + std::to_string(d) +
                             " vs radii " + std::to_string(tubes[i].r_full) + " + " +
                             std::to_string(tubes[j].r_full));
    }
}

double tube_slope(const Tube& t) {
  double s1 = std::abs(t.v_mid - t.v_axis) / t.r_half;
  double s2 = std::abs(t.v_outer - t.v_mid) / (t.r_full - t.r_half);
  return std::max(s1, s2);
}

}  // namespace

std::optional<Violation> validate_conn_sep(const ConnSepSpec& s) {
  if (s.n < 2) throw UsageError("prescriptions need n >= 2");
  if (static_cast<int>(s.conn.size()) != s.n || static_cast<int>(s.sep.size()) != s.n)
    throw UsageError("prescription needs exactly n connect sets and n separate sets");

  auto well_formed = [](const SetSpec& x) {
    switch (x.kind) {
      case SetSpec::Kind::empty: return true;
      case SetSpec::Kind::point: return x.lo == x.hi && x.lo >= 0.0 && x.lo <= 1.0;
      case SetSpec::Kind::interval: return x.lo < x.hi && x.lo >= 0.0 && x.hi <= 1.0;
    }
    return false;
  };
  for (int i = 0; i < s.n; ++i) {
    if (!well_formed(s.conn[i]))
      return Violation{1, i + 1, "connect set " + set_to_string(s.conn[i]) +
                                     " is not a compact interval, point, or empty set in [0,1]"};
    if (!well_formed(s.sep[i]))
      return Violation{1, i + 1, "separate set " + set_to_string(s.sep[i]) +
                                     " is not a compact interval, point, or empty set in [0,1]"};
  }

  for (int i = 0; i < s.n; ++i) {
    const SetSpec& a = s.conn[i];
    const SetSpec& b = s.sep[i];
    switch (a.kind) {
      case SetSpec::Kind::empty:
        if (b.kind != SetSpec::Kind::interval)
          return Violation{2, i + 1,
                           "empty connect set needs a nondegenerate separate interval, got " +
                               set_to_string(b)};
        break;
      case SetSpec::Kind::point:
        if (!(b == a))
          return Violation{2, i + 1, "point connect set " + set_to_string(a) +
                                         " needs an equal separate set, got " + set_to_string(b)};
        break;
      case SetSpec::Kind::interval:
        if (!b.empty())
          return Violation{2, i + 1, "interval connect set needs an empty separate set, got " +
                                         set_to_string(b)};
        break;
    }
  }

  for (int i = 0; i < s.n; ++i) {
    if (s.sep[i].empty()) continue;
    std::optional<SetSpec> meet = SetSpec::interval(0.0, 1.0);
    for (int j = 0; j < s.n; ++j)
      if (j != i) meet = intersect(meet, s.conn[j]);
    if (!subset_of(s.sep[i], meet))
      return Violation{3, i + 1, "separate set " + set_to_string(s.sep[i]) +
                                     " escapes the intersection of the other connect sets"};
  }

  bool all_nonempty = true;
  for (int i = 0; i < s.n; ++i) all_nonempty &= !s.conn[i].empty();
  if (all_nonempty) {
    std::optional<SetSpec> meet = SetSpec::interval(0.0, 1.0);
    for (int i = 0; i < s.n; ++i) meet = intersect(meet, s.conn[i]);
    if (!meet)
      return Violation{4, 0, "all connect sets are nonempty but have no common point"};
  }

  if (s.n == 2) {
    if (!(s.conn[0] == s.sep[1]) || !(s.conn[1] == s.sep[0]))
      return Violation{5, 0, "at n=2 the connect and separate sets must swap across axes"};
  }
  return std::nullopt;
}

SynthesizedField build_function(const ConnSepSpec& s) {
  if (auto v = validate_conn_sep(s))
    throw UsageError("prescription rejected (condition " + std::to_string(v->condition) +
                     (v->axis ? ", axis " + std::to_string(v->axis) : "") + "): " + v->detail);

  SynthesizedField out;
  out.permutation.resize(s.n);
  for (int i = 0; i < s.n; ++i) out.permutation[i] = i + 1;

  int empty_axis = 0;
  for (int i = 0; i < s.n && !empty_axis; ++i)
    if (s.conn[i].empty()) empty_axis = i + 1;

  if (s.n == 2) {
    if (empty_axis) {
      // Linear ramp along the empty axis; its level sets are the
      // perpendicular slabs.
      const SetSpec& a = s.conn[empty_axis == 1 ? 1 : 0];
      out.branch = SynthesisBranch::linear;
      out.permutation = empty_axis == 1 ? std::vector<int>{1, 2} : std::vector<int>{2, 1};
      out.field.n = 2;
      out.field.expr = expr_add(expr_mul(expr_const(a.hi - a.lo), expr_coord(empty_axis)),
                                expr_const(a.lo));
      out.lipschitz = a.hi - a.lo;
      out.elements.push_back("ramp " + std::to_string(a.lo) + " -> " + std::to_string(a.hi) +
                             " along axis " + std::to_string(empty_axis));
      out.elements.push_back("levels in " + set_to_string(a) + " give separating slabs");
      return out;
    }
    // Both nonempty forces every prescribed set to one common point.
    out.branch = SynthesisBranch::constant;
    out.field.n = 2;
    out.field.expr = expr_const(s.conn[0].lo);
    out.lipschitz = 0;
    out.elements.push_back("constant " + std::to_string(s.conn[0].lo));
    return out;
  }

  out.field.n = s.n;
  if (empty_axis) {
    // Construction axis 1 is the empty axis; the rest keep their order.
    out.permutation.clear();
    out.permutation.push_back(empty_axis);
    for (int i = 1; i <= s.n; ++i)
      if (i != empty_axis) out.permutation.push_back(i);

    double bl = s.sep[empty_axis - 1].lo, br = s.sep[empty_axis - 1].hi;
    ExprPtr slab = expr_pwl(expr_coord(empty_axis), {{0.0, bl}, {0.5, bl}, {1.0, br}});
    out.elements.push_back("slab ramp " + std::to_string(bl) + " -> " + std::to_string(br) +
                           " on {x_" + std::to_string(empty_axis) + " >= 1/2}");
    double max_slope = (br - bl) * 2.0;

    std::vector<Tube> tubes;
    for (int c = 2; c <= s.n; ++c) {  // construction coordinate
      int orig = out.permutation[c - 1];
      const SetSpec& a = s.conn[orig - 1];
      Tube t;
      t.a.assign(s.n, 0.0);
      t.b.assign(s.n, 0.0);
      double plane = std::pow(0.5, c);
      for (int m = 1; m <= s.n; ++m) {
        int om = out.permutation[m - 1];
        double v = m == 1 ? plane : 0.5;
        t.a[om - 1] = v;
        t.b[om - 1] = v;
      }
      t.a[orig - 1] = 0.0;
      t.b[orig - 1] = 1.0;
      t.r_half = 0.5 * std::pow(0.2, c);
      t.r_full = std::pow(0.2, c);
      t.v_axis = a.hi;
      t.v_mid = a.lo;
      t.v_outer = bl;
      max_slope = std::max(max_slope, tube_slope(t));
      out.elements.push_back("tube along axis " + std::to_string(orig) + " at x_" +
                             std::to_string(empty_axis) + "=" + std::to_string(plane) +
                             ", radius " + std::to_string(t.r_full) + ", levels " +
                             set_to_string(a));
      tubes.push_back(std::move(t));
    }
    check_tubes_disjoint(tubes);

    ExprPtr g = slab;
    for (const Tube& t : tubes) g = expr_add(g, expr_sub(tube_term(t), expr_const(bl)));
    out.field.expr = g;
    out.branch = SynthesisBranch::empty_axis;
    out.lipschitz = max_slope;
    return out;
  }

  // All connect sets nonempty: point axes force a single shared level p;
  // every interval axis gets a tube whose cross-sections sweep its levels.
  double p;
  bool have_point = false;
  double meet_lo = 0.0, meet_hi = 1.0;
  for (int i = 0; i < s.n; ++i) {
    meet_lo = std::max(meet_lo, s.conn[i].lo);
    meet_hi = std::min(meet_hi, s.conn[i].hi);
    if (s.conn[i].kind == SetSpec::Kind::point) have_point = true;
  }
  p = have_point ? meet_lo : 0.5 * (meet_lo + meet_hi);

  std::vector<Tube> tubes;
  double max_slope = 0;
  for (int j = 1; j <= s.n; ++j) {
    if (s.conn[j - 1].kind != SetSpec::Kind::interval) continue;
    const SetSpec& a = s.conn[j - 1];
    Tube t;
    t.a.assign(s.n, std::pow(0.5, j));
    t.b.assign(s.n, std::pow(0.5, j));
    t.a[j - 1] = 0.0;
    t.b[j - 1] = 1.0;
    t.r_half = 0.5 * std::pow(0.2, j);
    t.r_full = std::pow(0.2, j);
    t.v_axis = a.hi;
    t.v_mid = a.lo;
    t.v_outer = p;
    max_slope = std::max(max_slope, tube_slope(t));
    out.elements.push_back("tube along axis " + std::to_string(j) + " at offset " +
                           std::to_string(std::pow(0.5, j)) + ", radius " +
                           std::to_string(t.r_full) + ", levels " + set_to_string(a));
    tubes.push_back(std::move(t));
  }
  check_tubes_disjoint(tubes);

  ExprPtr g = expr_const(p);
  for (const Tube& t : tubes) g = expr_add(g, expr_sub(tube_term(t), expr_const(p)));
  out.field.expr = g;
  out.branch = tubes.empty() ? SynthesisBranch::constant : SynthesisBranch::all_nonempty;
  out.lipschitz = max_slope;
  out.elements.push_back("base level " + std::to_string(p));
  return out;
}

std::string branch_name(SynthesisBranch b) {
  switch (b) {
    case SynthesisBranch::constant: return "constant";
    case SynthesisBranch::linear: return "linear";
    case SynthesisBranch::empty_axis: return "empty-axis";
    case SynthesisBranch::all_nonempty: return "all-nonempty";
  }
  return "?";
}

double evaluate(const SynthesizedField& f, const std::vector<double>& x) {
  return field_eval(ScalarField{f.field}, x);
}

}  // namespace cubetop

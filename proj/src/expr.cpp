#include "expr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cubetop {

namespace {

double down(double v) {
  for (int i = 0; i < 2; ++i) v = std::nextafter(v, -std::numeric_limits<double>::infinity());
  return v;
}
double up(double v) {
  for (int i = 0; i < 2; ++i) v = std::nextafter(v, std::numeric_limits<double>::infinity());
  return v;
}

using Iv = std::pair<double, double>;

// Directed rounding emulated by nextafter, but only when the operation
// actually rounded; exact float results (x + 0, halves, small integers)
// must stay exact or certificates at exactly representable levels pick up
// phantom cells.
double add_down(double a, double b) {
  double s = a + b;
  double bv = s - a, av = s - bv;
  double err = (a - av) + (b - bv);
  if (err == 0.0) return s;
  return err < 0 ? std::nextafter(s, -std::numeric_limits<double>::infinity()) : s;
}
double add_up(double a, double b) {
  double s = a + b;
  double bv = s - a, av = s - bv;
  double err = (a - av) + (b - bv);
  if (err == 0.0) return s;
  return err > 0 ? std::nextafter(s, std::numeric_limits<double>::infinity()) : s;
}
double sub_down(double a, double b) { return add_down(a, -b); }
double sub_up(double a, double b) { return add_up(a, -b); }
double mul_down(double a, double b) {
  double p = a * b;
  double err = std::fma(a, b, -p);
  if (err == 0.0) return p;
  return err < 0 ? std::nextafter(p, -std::numeric_limits<double>::infinity()) : p;
}
double mul_up(double a, double b) {
  double p = a * b;
  double err = std::fma(a, b, -p);
  if (err == 0.0) return p;
  return err > 0 ? std::nextafter(p, std::numeric_limits<double>::infinity()) : p;
}

double eval_pwl(const std::vector<Iv>& knots, double x) {
  if (x <= knots.front().first) return knots.front().second;
  if (x >= knots.back().first) return knots.back().second;
  auto it = std::upper_bound(knots.begin(), knots.end(), x,
                             [](double v, const Iv& kn) { return v < kn.first; });
  const Iv& hi = *it;
  const Iv& lo = *(it - 1);
  double t = (x - lo.first) / (hi.first - lo.first);
  return lo.second + t * (hi.second - lo.second);
}

// Exact minimum of the squared distance between the segment a + t(b-a),
// t in [0,1], and the box: piecewise quadratic in t with breakpoints where
// a coordinate crosses a box wall.
double segment_box_min_dist(const std::vector<double>& a, const std::vector<double>& b,
                            const Box& box) {
  std::size_t n = box.size();
  std::vector<double> ts{0.0, 1.0};
  for (std::size_t s = 0; s < n; ++s) {
    double d = b[s] - a[s];
    if (d == 0.0) continue;
    for (double wall : {box[s].first, box[s].second}) {
      double t = (wall - a[s]) / d;
      if (t > 0.0 && t < 1.0) ts.push_back(t);
    }
  }
  std::sort(ts.begin(), ts.end());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t seg = 0; seg + 1 < ts.size(); ++seg) {
    double t0 = ts[seg], t1 = ts[seg + 1];
    if (t1 <= t0) continue;
    double mid = 0.5 * (t0 + t1);
    double A = 0, B = 0, C = 0;
    for (std::size_t s = 0; s < n; ++s) {
      double d = b[s] - a[s];
      double pm = a[s] + mid * d;
      if (pm < box[s].first) {
        double e = box[s].first - a[s];  // penalty (e - t d)^2
        A += d * d;
        B += -2.0 * e * d;
        C += e * e;
      } else if (pm > box[s].second) {
        double e = a[s] - box[s].second;  // penalty (e + t d)^2
        A += d * d;
        B += 2.0 * e * d;
        C += e * e;
      }
    }
    auto q = [&](double t) { return (A * t + B) * t + C; };
    double sub = std::min(q(t0), q(t1));
    if (A > 0) {
      double tv = -B / (2.0 * A);
      if (tv > t0 && tv < t1) sub = std::min(sub, q(tv));
    }
    best = std::min(best, sub);
  }
  return best < 0 ? 0.0 : best;
}

double point_segment_dist(const std::vector<double>& p, const std::vector<double>& a,
                          const std::vector<double>& b) {
  double dd = 0, pn = 0;
  for (std::size_t s = 0; s < p.size(); ++s) {
    double d = b[s] - a[s];
    dd += d * d;
    pn += (p[s] - a[s]) * d;
  }
  double t = dd > 0 ? std::clamp(pn / dd, 0.0, 1.0) : 0.0;
  double acc = 0;
  for (std::size_t s = 0; s < p.size(); ++s) {
    double diff = p[s] - (a[s] + t * (b[s] - a[s]));
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

}  // namespace

ExprPtr expr_const(double v) {
  Expr e;
  e.op = Expr::Op::constant;
  e.value = v;
  return node(std::move(e));
}

ExprPtr expr_coord(int axis) {
  if (axis < 1) throw UsageError("coordinate axis must be >= 1");
  Expr e;
  e.op = Expr::Op::coord;
  e.axis = axis;
  return node(std::move(e));
}

namespace {
ExprPtr binary(Expr::Op op, ExprPtr a, ExprPtr b) {
  Expr e;
  e.op = op;
  e.args = {std::move(a), std::move(b)};
  return node(std::move(e));
}
}  // namespace

ExprPtr expr_add(ExprPtr a, ExprPtr b) { return binary(Expr::Op::add, std::move(a), std::move(b)); }
ExprPtr expr_sub(ExprPtr a, ExprPtr b) { return binary(Expr::Op::sub, std::move(a), std::move(b)); }
ExprPtr expr_mul(ExprPtr a, ExprPtr b) { return binary(Expr::Op::mul, std::move(a), std::move(b)); }
ExprPtr expr_min(ExprPtr a, ExprPtr b) {
  return binary(Expr::Op::minimum, std::move(a), std::move(b));
}
ExprPtr expr_max(ExprPtr a, ExprPtr b) {
  return binary(Expr::Op::maximum, std::move(a), std::move(b));
}

ExprPtr expr_abs(ExprPtr a) {
  Expr e;
  e.op = Expr::Op::absolute;
  e.args = {std::move(a)};
  return node(std::move(e));
}

ExprPtr expr_segdist(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size() || a.empty()) throw UsageError("segment endpoints need equal dimension");
  Expr e;
  e.op = Expr::Op::segdist;
  e.seg_a = std::move(a);
  e.seg_b = std::move(b);
  return node(std::move(e));
}

ExprPtr expr_pwl(ExprPtr arg, std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) throw UsageError("piecewise-linear ramp needs at least two knots");
  for (std::size_t i = 1; i < knots.size(); ++i)
    if (!(knots[i - 1].first < knots[i].first))
      throw UsageError("piecewise-linear knots must be strictly ascending");
  Expr e;
  e.op = Expr::Op::pwl;
  e.args = {std::move(arg)};
  e.knots = std::move(knots);
  return node(std::move(e));
}

int expr_max_axis(const Expr& e) {
  int m = e.op == Expr::Op::coord ? e.axis : 0;
  if (e.op == Expr::Op::segdist) m = static_cast<int>(e.seg_a.size());
  for (const auto& a : e.args) m = std::max(m, expr_max_axis(*a));
  return m;
}

double expr_eval(const Expr& e, const std::vector<double>& x) {
  switch (e.op) {
    case Expr::Op::constant: return e.value;
    case Expr::Op::coord: return x[e.axis - 1];
    case Expr::Op::add: return expr_eval(*e.args[0], x) + expr_eval(*e.args[1], x);
    case Expr::Op::sub: return expr_eval(*e.args[0], x) - expr_eval(*e.args[1], x);
    case Expr::Op::mul: return expr_eval(*e.args[0], x) * expr_eval(*e.args[1], x);
    case Expr::Op::minimum: return std::min(expr_eval(*e.args[0], x), expr_eval(*e.args[1], x));
    case Expr::Op::maximum: return std::max(expr_eval(*e.args[0], x), expr_eval(*e.args[1], x));
    case Expr::Op::absolute: return std::abs(expr_eval(*e.args[0], x));
    case Expr::Op::segdist: return point_segment_dist(x, e.seg_a, e.seg_b);
    case Expr::Op::pwl: return eval_pwl(e.knots, expr_eval(*e.args[0], x));
  }
  return 0.0;
}

std::pair<double, double> expr_range(const Expr& e, const Box& box) {
  switch (e.op) {
    case Expr::Op::constant: return {e.value, e.value};
    case Expr::Op::coord: return box[e.axis - 1];
    case Expr::Op::add: {
      Iv a = expr_range(*e.args[0], box), b = expr_range(*e.args[1], box);
      return {add_down(a.first, b.first), add_up(a.second, b.second)};
    }
    case Expr::Op::sub: {
      Iv a = expr_range(*e.args[0], box), b = expr_range(*e.args[1], box);
      return {sub_down(a.first, b.second), sub_up(a.second, b.first)};
    }
    case Expr::Op::mul: {
      Iv a = expr_range(*e.args[0], box), b = expr_range(*e.args[1], box);
      double lo = std::min(std::min(mul_down(a.first, b.first), mul_down(a.first, b.second)),
                           std::min(mul_down(a.second, b.first), mul_down(a.second, b.second)));
      double hi = std::max(std::max(mul_up(a.first, b.first), mul_up(a.first, b.second)),
                           std::max(mul_up(a.second, b.first), mul_up(a.second, b.second)));
      return {lo, hi};
    }
    case Expr::Op::minimum: {
      Iv a = expr_range(*e.args[0], box), b = expr_range(*e.args[1], box);
      return {std::min(a.first, b.first), std::min(a.second, b.second)};
    }
    case Expr::Op::maximum: {
      Iv a = expr_range(*e.args[0], box), b = expr_range(*e.args[1], box);
      return {std::max(a.first, b.first), std::max(a.second, b.second)};
    }
    case Expr::Op::absolute: {
      Iv a = expr_range(*e.args[0], box);
      if (a.first >= 0) return a;
      if (a.second <= 0) return {-a.second, -a.first};
      return {0.0, std::max(-a.first, a.second)};
    }
    case Expr::Op::segdist: {
      double lo2 = segment_box_min_dist(e.seg_a, e.seg_b, box);
      double lo = down(std::sqrt(lo2));
      double hi = 0;
      // Distance to a segment is convex, so the maximum over a box sits at
      // a corner.
      std::size_t n = box.size();
      std::vector<double> corner(n);
      for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        for (std::size_t s = 0; s < n; ++s)
          corner[s] = (mask >> s) & 1 ? box[s].second : box[s].first;
        hi = std::max(hi, point_segment_dist(corner, e.seg_a, e.seg_b));
      }
      return {std::max(lo, 0.0), up(hi)};
    }
    case Expr::Op::pwl: {
      Iv a = expr_range(*e.args[0], box);
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      // Interpolated endpoint values carry rounding and get a directed
      // nudge; clamped ends and interior knots are exact.
      for (double x : {a.first, a.second}) {
        double v = eval_pwl(e.knots, x);
        bool clamped = x <= e.knots.front().first || x >= e.knots.back().first;
        lo = std::min(lo, clamped ? v : down(v));
        hi = std::max(hi, clamped ? v : up(v));
      }
      for (const auto& kn : e.knots) {
        if (kn.first > a.first && kn.first < a.second) {
          lo = std::min(lo, kn.second);
          hi = std::max(hi, kn.second);
        }
      }
      return {lo, hi};
    }
  }
  return {0.0, 0.0};
}

}  // namespace cubetop

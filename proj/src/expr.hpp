#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "util.hpp"

namespace cubetop {

// Closed-form scalar expressions over cube coordinates, with exact point
// evaluation and conservative range enclosures on axis-aligned boxes
// (inclusion-monotone, so enclosures shrink under subdivision).
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Op {
    constant,
    coord,     // 1-based axis
    add,
    sub,
    mul,
    minimum,
    maximum,
    absolute,
    segdist,   // Euclidean distance to the segment [seg_a, seg_b]
    pwl        // piecewise-linear ramp of the argument, clamped outside the knots
  };

  Op op = Op::constant;
  double value = 0.0;
  int axis = 0;
  std::vector<ExprPtr> args;
  std::vector<double> seg_a, seg_b;
  std::vector<std::pair<double, double>> knots;  // ascending x
};

ExprPtr expr_const(double v);
ExprPtr expr_coord(int axis);
ExprPtr expr_add(ExprPtr a, ExprPtr b);
ExprPtr expr_sub(ExprPtr a, ExprPtr b);
ExprPtr expr_mul(ExprPtr a, ExprPtr b);
ExprPtr expr_min(ExprPtr a, ExprPtr b);
ExprPtr expr_max(ExprPtr a, ExprPtr b);
ExprPtr expr_abs(ExprPtr a);
ExprPtr expr_segdist(std::vector<double> a, std::vector<double> b);
ExprPtr expr_pwl(ExprPtr arg, std::vector<std::pair<double, double>> knots);

// Highest coordinate axis referenced; 0 for closed constants.
int expr_max_axis(const Expr& e);

double expr_eval(const Expr& e, const std::vector<double>& x);

using Box = std::vector<std::pair<double, double>>;

// lo <= e(x) <= hi for every x in the box.
std::pair<double, double> expr_range(const Expr& e, const Box& box);

}  // namespace cubetop

#pragma once

#include <variant>
#include <vector>

#include "expr.hpp"
#include "topology.hpp"

namespace cubetop {

// Scalar field sampled at the (k+1)^n lattice, evaluated by multilinear
// interpolation. Per-cell ranges of the interpolant are exact: extrema of
// a multilinear function on a box sit at its corners.
struct VertexField {
  GridSpec spec;
  std::vector<double> values;  // row-major over vertices, axis 1 fastest
};

void validate_vertex_field(const VertexField& f);
std::int64_t vertex_linear_index(const GridSpec& spec, const std::vector<int>& v);

// Scalar field given in closed form; ranges are conservative interval
// enclosures that shrink under subdivision.
struct ExprField {
  int n = 1;
  ExprPtr expr;
};

void validate_expr_field(const ExprField& f);

using ScalarField = std::variant<VertexField, ExprField>;

int field_dim(const ScalarField& f);
double field_eval(const ScalarField& f, const std::vector<double>& x);
VertexField sample_vertex_field(const ExprField& f, int k);

// Analysis grids for a VertexField must refine its sampling grid (k a
// multiple of the native k); ExprFields accept any grid.
void validate_analysis_grid(const ScalarField& f, const GridSpec& grid);

std::pair<double, double> cell_range(const ScalarField& f, const GridSpec& grid, const Cell& c);
std::vector<std::pair<double, double>> all_cell_ranges(const ScalarField& f, const GridSpec& grid);

// Classification of cells against a level p by their value ranges.
struct FiberBracket {
  double level = 0;
  CellSet outer;           // lo <= p <= hi; covers every cell meeting the fiber
  CellSet strictly_below;  // hi < p
  CellSet strictly_above;  // lo > p
  CellSet below_outer;     // lo < p; covers {g < p}
  CellSet above_outer;     // hi > p; covers {g > p}
};

FiberBracket fiber_bracket(const ScalarField& f, const GridSpec& grid, double p);

// One-sided certificates. A true return is a guarantee; false only means
// the current grid cannot decide.
bool certify_not_conn(const ScalarField& f, const GridSpec& grid, double p, int axis);
bool certify_sep(const ScalarField& f, const GridSpec& grid, double p, int axis);
bool certify_not_sep(const ScalarField& f, const GridSpec& grid, double p, int axis);
// Positive route: the fiber separates every other axis, so it must span
// this one. Needs n >= 2.
bool certify_conn(const ScalarField& f, const GridSpec& grid, double p, int axis);

// Non-strict sign conditions of the level on the opposite faces of the
// axis, verified from face ranges (either orientation).
bool pm_sign_check(const ScalarField& f, const GridSpec& grid, int axis, double p);

// Chain through the intersection of the outer fibers of n-1 fields, each
// certified to separate its assigned axis, spanning the remaining axis.
Chain pm_product_witness(const std::vector<ScalarField>& fields, const std::vector<double>& levels,
                         const std::vector<int>& sigma, int remaining_axis, const GridSpec& grid);

struct CertInterval {
  double lo = 0, hi = 0;
};

struct LevelFlags {
  bool conn_in = false, conn_out = false, sep_in = false, sep_out = false;
};

struct AxisCertified {
  std::vector<CertInterval> conn_in, conn_out, sep_in, sep_out;
};

struct AnalysisOptions {
  std::vector<int> axes;        // empty: all axes
  std::vector<int> k_schedule;  // ascending; empty: native k (vertex) or {16, 32}
  double dp = 0.01;
  std::vector<double> extra_levels;  // probed in addition to the dp lattice
  int jobs = 0;
};

struct AnalysisResult {
  std::vector<int> axes;
  std::vector<int> k_schedule;
  double dp = 0;
  std::vector<double> levels;  // shared scan lattice, ascending
  // flags[k_idx][axis_idx][level_idx]
  std::vector<std::vector<std::vector<LevelFlags>>> flags;
  // Merged closed intervals of consecutive certified scan points.
  std::vector<std::vector<AxisCertified>> intervals;  // [k_idx][axis_idx]
};

// Scans the level lattice across the grid schedule and certifies each
// level in/out of the connect and separate sets per axis. Verifies
// certificate consistency, the interval structure of certified-in sets,
// and nesting across nested grids; any violation is a fatal soundness
// defect.
AnalysisResult bracket_sets(const ScalarField& f, const AnalysisOptions& opts);

}  // namespace cubetop

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "scalar_field.hpp"
#include "synthesis.hpp"

using namespace cubetop;

namespace {

// Coordinate ramp sampled on the (k+1)^n lattice.
VertexField coord_field(int n, int k, int axis) {
  return sample_vertex_field({n, expr_coord(axis)}, k);
}

ScalarField x1_field() { return coord_field(2, 2, 1); }

}  // namespace

TEST_CASE("cell ranges") {
  GridSpec g{2, 2};
  ScalarField f = x1_field();
  CHECK(cell_range(f, g, {1, 1}) == std::pair<double, double>{0.0, 0.5});
  CHECK(cell_range(f, g, {2, 2}) == std::pair<double, double>{0.5, 1.0});

  ScalarField c = ExprField{2, expr_const(0.3)};
  CHECK(cell_range(c, g, {1, 2}) == std::pair<double, double>{0.3, 0.3});
}

TEST_CASE("segment distance enclosures against dense sampling") {
  ExprField dist{3, expr_segdist({0.5, 0.5, 0.0}, {0.5, 0.5, 1.0})};
  GridSpec g{3, 4};
  ScalarField f = dist;
  std::mt19937_64 rng(5);
  for (std::int64_t ci = 0; ci < g.cell_count(); ++ci) {
    Cell c = cell_from_linear(g, ci);
    auto [lo, hi] = cell_range(f, g, c);
    CHECK(lo <= hi);
    for (int probe = 0; probe < 40; ++probe) {
      std::vector<double> x(3);
      for (int s = 0; s < 3; ++s) {
        std::uniform_real_distribution<double> u((c[s] - 1) / 4.0, c[s] / 4.0);
        x[s] = u(rng);
      }
      double v = field_eval(f, x);
      CHECK(v >= lo);
      CHECK(v <= hi);
    }
  }
  // A box away from the segment has a positive floor.
  auto [lo, hi] = cell_range(f, g, {1, 1, 1});
  CHECK(lo > 0.0);
  CHECK(hi >= lo);
}

TEST_CASE("range enclosures hold for composite expressions") {
  ExprPtr e = expr_add(
      expr_mul(expr_const(0.5), expr_abs(expr_sub(expr_coord(1), expr_const(0.4)))),
      expr_pwl(expr_coord(2), {{0.0, 0.1}, {0.4, 0.9}, {1.0, 0.2}}));
  ScalarField f = ExprField{2, e};
  GridSpec g{2, 5};
  std::mt19937_64 rng(17);
  for (std::int64_t ci = 0; ci < g.cell_count(); ++ci) {
    Cell c = cell_from_linear(g, ci);
    auto [lo, hi] = cell_range(f, g, c);
    for (int probe = 0; probe < 30; ++probe) {
      std::vector<double> x(2);
      for (int s = 0; s < 2; ++s) {
        std::uniform_real_distribution<double> u((c[s] - 1) / 5.0, c[s] / 5.0);
        x[s] = u(rng);
      }
      double v = field_eval(f, x);
      CHECK(v >= lo);
      CHECK(v <= hi);
    }
  }
}

TEST_CASE("vertex ranges are corner-exact") {
  std::mt19937_64 rng(23);
  VertexField vf{{2, 3}, {}};
  vf.values.resize(vf.spec.vertex_count());
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& v : vf.values) v = u(rng);
  ScalarField f = vf;
  GridSpec g = vf.spec;
  for (std::int64_t ci = 0; ci < g.cell_count(); ++ci) {
    Cell c = cell_from_linear(g, ci);
    auto [lo, hi] = cell_range(f, g, c);
    double mn = 1e9, mx = -1e9;
    for (int bx = 0; bx <= 1; ++bx)
      for (int by = 0; by <= 1; ++by) {
        std::int64_t idx = vertex_linear_index(g, {c[0] - 1 + bx, c[1] - 1 + by});
        mn = std::min(mn, vf.values[idx]);
        mx = std::max(mx, vf.values[idx]);
      }
    CHECK(lo == mn);
    CHECK(hi == mx);
  }
}

TEST_CASE("fiber classification") {
  GridSpec g{2, 2};
  ScalarField f = x1_field();
  FiberBracket mid = fiber_bracket(f, g, 0.5);
  CHECK(mid.outer.size() == 4);

  FiberBracket quarter = fiber_bracket(f, g, 0.25);
  CHECK(quarter.outer.size() == 2);
  CHECK(quarter.outer.contains(Cell{1, 1}));
  CHECK(quarter.strictly_above.size() == 2);
  CHECK(quarter.strictly_above.contains(Cell{2, 1}));

  FiberBracket beyond = fiber_bracket(f, g, 2.0);
  CHECK(beyond.outer.empty());
  CHECK(beyond.strictly_below.size() == 4);
}

TEST_CASE("one-sided certificates on the coordinate ramp") {
  GridSpec g{2, 2};
  ScalarField f = x1_field();

  CHECK(certify_not_conn(f, g, 0.25, 1));
  CHECK(!certify_not_conn(f, g, 0.5, 1));
  ScalarField c3 = ExprField{2, expr_const(0.3)};
  CHECK(!certify_not_conn(c3, g, 0.3, 1));

  CHECK(certify_sep(f, g, 0.5, 1));
  CHECK(!certify_sep(f, g, 0.5, 2));
  CHECK(!certify_sep(c3, g, 0.7, 1));

  CHECK(certify_not_sep(f, g, 0.75, 2));
  CHECK(!certify_not_sep(f, g, 0.5, 1));
  CHECK(!certify_not_sep(c3, g, 0.3, 1));

  CHECK(certify_conn(f, g, 0.5, 2));
  CHECK(!certify_conn(f, g, 0.25, 2));
  CHECK(!certify_conn(c3, g, 0.7, 2));
  ScalarField line = ExprField{1, expr_coord(1)};
  CHECK_THROWS_AS(certify_conn(line, GridSpec{1, 2}, 0.5, 1), UsageError);
}

TEST_CASE("face sign verification") {
  GridSpec g{2, 4};
  ScalarField f = ExprField{2, expr_sub(expr_coord(1), expr_const(0.5))};
  CHECK(pm_sign_check(f, g, 1, 0.0));
  CHECK(!pm_sign_check(f, g, 2, 0.0));
  ScalarField prod =
      ExprField{2, expr_sub(expr_mul(expr_coord(1), expr_coord(2)), expr_const(2.0))};
  CHECK(!pm_sign_check(prod, g, 1, 0.0));
}

TEST_CASE("joint outer fibers of separating factors span the leftover axis") {
  GridSpec g2{2, 2};
  Chain chain = pm_product_witness({x1_field()}, {0.5}, {1}, 2, g2);
  CHECK(chain.axis == 2);
  CHECK(chain.cells.front()[1] == 1);
  CHECK(chain.cells.back()[1] == 2);

  GridSpec g3{3, 4};
  ScalarField f1 = ExprField{3, expr_sub(expr_coord(1), expr_const(0.5))};
  ScalarField f2 = ExprField{3, expr_sub(expr_coord(2), expr_const(0.5))};
  Chain middle = pm_product_witness({f1, f2}, {0.0, 0.0}, {1, 2}, 3, g3);
  CHECK(middle.cells.size() == 4);
  for (const Cell& c : middle.cells) {
    CHECK((c[0] == 2 || c[0] == 3));
    CHECK((c[1] == 2 || c[1] == 3));
  }

  ScalarField zero = ExprField{2, expr_const(0.0)};
  Chain any = pm_product_witness({zero}, {0.0}, {1}, 2, g2);
  CHECK(any.cells.front()[1] == 1);
  CHECK(any.cells.back()[1] == 2);

  CHECK_THROWS_AS(pm_product_witness({x1_field()}, {0.25}, {1}, 2, g2), UsageError);
}

TEST_CASE("dyadic boxes stay exact in closed form") {
  // The expression route must certify the half-way separation at k=2 just
  // like the sampled route: the grid wall 1/2 is exactly representable.
  ScalarField f = ExprField{2, expr_coord(1)};
  GridSpec g{2, 2};
  CHECK(cell_range(f, g, {2, 1}) == std::pair<double, double>{0.5, 1.0});
  CHECK(certify_sep(f, g, 0.5, 1));
  CHECK(certify_conn(f, g, 0.5, 2));
}

TEST_CASE("bracketing the coordinate ramp") {
  AnalysisOptions opts;
  opts.k_schedule = {2};
  opts.dp = 0.25;
  AnalysisResult r = bracket_sets(x1_field(), opts);
  REQUIRE(r.axes == std::vector<int>{1, 2});

  auto holds = [&](int axis_idx, double p, auto pick) {
    for (std::size_t li = 0; li < r.levels.size(); ++li)
      if (r.levels[li] == p) return pick(r.flags[0][axis_idx][li]);
    return false;
  };
  CHECK(holds(0, 0.5, [](const LevelFlags& f) { return f.sep_in; }));
  CHECK(holds(0, 0.25, [](const LevelFlags& f) { return f.conn_out; }));
  CHECK(holds(0, 0.75, [](const LevelFlags& f) { return f.conn_out; }));
  CHECK(holds(1, 0.5, [](const LevelFlags& f) { return f.conn_in; }));
}

TEST_CASE("bracketing a constant field pins its single level") {
  AnalysisOptions opts;
  opts.k_schedule = {2};
  opts.dp = 0.25;
  AnalysisResult r = bracket_sets(ExprField{2, expr_const(0.3)}, opts);
  // The whole cube is the only fiber: it both spans and separates every
  // axis, and the scan collapses to the single attained level.
  for (std::size_t ai = 0; ai < r.axes.size(); ++ai) {
    REQUIRE(r.intervals[0][ai].sep_in.size() == 1);
    CHECK(r.intervals[0][ai].sep_in[0].lo == 0.3);
    CHECK(r.intervals[0][ai].sep_in[0].hi == 0.3);
    REQUIRE(r.intervals[0][ai].conn_in.size() == 1);
    CHECK(r.intervals[0][ai].conn_in[0].lo == 0.3);
  }
}

TEST_CASE("scan flags agree with the direct certificate routes") {
  ConnSepSpec spec;
  spec.n = 3;
  spec.conn = {SetSpec::none(), SetSpec::interval(0.2, 0.8), SetSpec::interval(0.3, 0.9)};
  spec.sep = {SetSpec::interval(0.3, 0.7), SetSpec::none(), SetSpec::none()};
  SynthesizedField syn = build_function(spec);
  ScalarField f = syn.field;

  AnalysisOptions opts;
  opts.k_schedule = {8};
  opts.dp = 0.06;
  AnalysisResult r = bracket_sets(f, opts);
  GridSpec g{3, 8};
  for (std::size_t li = 0; li < r.levels.size(); li += 3) {
    double p = r.levels[li];
    for (std::size_t ai = 0; ai < r.axes.size(); ++ai) {
      int axis = r.axes[ai];
      const LevelFlags& fl = r.flags[0][ai][li];
      CHECK(fl.sep_in == certify_sep(f, g, p, axis));
      CHECK(fl.conn_out == certify_not_conn(f, g, p, axis));
      CHECK(fl.sep_out == certify_not_sep(f, g, p, axis));
      CHECK(fl.conn_in == certify_conn(f, g, p, axis));
    }
  }
}

TEST_CASE("refinement keeps certificates") {
  ScalarField f = ExprField{2, expr_pwl(expr_coord(1), {{0.0, 0.1}, {0.6, 0.8}, {1.0, 0.4}})};
  AnalysisOptions opts;
  opts.k_schedule = {4, 8, 16};
  opts.dp = 0.05;
  AnalysisResult r = bracket_sets(f, opts);  // nesting is checked internally
  CHECK(r.flags.size() == 3);
}

TEST_CASE("analysis grid must refine the sampling grid") {
  VertexField vf = coord_field(2, 3, 1);
  CHECK_THROWS_AS(validate_analysis_grid(ScalarField{vf}, GridSpec{2, 4}), UsageError);
  AnalysisOptions opts;
  opts.k_schedule = {3, 6};
  opts.dp = 0.1;
  AnalysisResult r = bracket_sets(ScalarField{vf}, opts);
  CHECK(r.flags.size() == 2);
}

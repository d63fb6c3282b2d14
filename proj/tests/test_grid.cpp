#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "grid.hpp"

using namespace cubetop;

namespace {

// Independent reference: per-axis interval overlap. Axis s of cell c is
// [c-1, c] in units of 1/k; the product of overlaps gives the
// intersection, its dimension counts the fat overlaps.
int overlap_dim(const Cell& a, const Cell& b) {
  int dim = 0;
  for (std::size_t s = 0; s < a.size(); ++s) {
    int lo = std::max(a[s] - 1, b[s] - 1);
    int hi = std::min(a[s], b[s]);
    if (lo > hi) return -1;
    if (lo < hi) ++dim;
  }
  return dim;
}

}  // namespace

TEST_CASE("intersection dimension on the stated instances") {
  GridSpec g23{2, 3};
  CHECK(intersection_dim(g23, {2, 2}, {2, 2}) == 2);
  CHECK(overlap_dim({1, 1}, {2, 2}) == 0);
  CHECK(intersection_dim(g23, {1, 1}, {2, 2}) == 0);
  CHECK(intersection_dim(g23, {1, 1}, {3, 1}) == -1);
  GridSpec g32{3, 2};
  CHECK(overlap_dim({1, 1, 1}, {1, 2, 1}) == 2);
  CHECK(intersection_dim(g32, {1, 1, 1}, {1, 2, 1}) == 2);
}

TEST_CASE("intersection dimension matches the overlap reference everywhere") {
  for (GridSpec g : {GridSpec{2, 3}, GridSpec{3, 2}, GridSpec{1, 4}}) {
    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
      Cell a = cell_from_linear(g, i);
      for (std::int64_t j = 0; j < g.cell_count(); ++j) {
        Cell b = cell_from_linear(g, j);
        int d = intersection_dim(g, a, b);
        CHECK(d == overlap_dim(a, b));
        CHECK(d == intersection_dim(g, b, a));
        if (i == j) CHECK(d == g.n);
        if (d == g.n) CHECK(a == b);
        if (d >= 0) {
          auto f = shared_face(g, a, b);
          REQUIRE(f.has_value());
          CHECK(f->dim() == d);
          CHECK(face_contained_in_cell(g, *f, a));
          CHECK(face_contained_in_cell(g, *f, b));
        } else {
          CHECK(!shared_face(g, a, b).has_value());
        }
      }
    }
  }
}

TEST_CASE("face touching reads the index") {
  GridSpec g{2, 3};
  CHECK(touches_face(g, {1, 2}, {1, -1}));
  CHECK(!touches_face(g, {1, 2}, {1, +1}));
  CHECK(touches_face(g, {3, 2}, {1, +1}));
}

TEST_CASE("chain thresholds per color") {
  GridSpec g3{3, 5};
  CHECK(adjacency_threshold(g3, 1) == 0);
  CHECK(adjacency_threshold(g3, 3) == 2);
  CHECK(adjacency_threshold(GridSpec{3, 2}, 2) == 1);
  CHECK_THROWS_AS(adjacency_threshold(g3, 0), UsageError);
  CHECK_THROWS_AS(adjacency_threshold(g3, 4), UsageError);
}

TEST_CASE("lattice sizes") {
  CHECK(FaceLattice({1, 1}).size() == 3);
  CHECK(FaceLattice({2, 1}).size() == 9);
  std::int64_t count = 0;
  FaceLattice lat({2, 2});
  for (std::int64_t i = 0; i < lat.size(); ++i) ++count;
  CHECK(count == 25);
  CHECK_THROWS_AS(FaceLattice({9, 10}), GuardError);
}

TEST_CASE("containment agrees with token semantics") {
  GridSpec g{2, 2};
  FaceLattice lat(g);
  // Vertex (1/2, 1/2) has token code (2, 2); it bounds all four cells.
  GridFace center{{2, 2}};
  CHECK(lat.cells_containing(center).size() == 4);
  for (const Cell& c : lat.cells_containing(center))
    CHECK(face_contained_in_cell(g, center, c));
  GridFace cell11 = cell_as_face(g, {1, 1});
  CHECK(lat.contains(center, cell11));
  CHECK(!lat.contains(cell11, center));
  CHECK(lat.faces_of_cell({1, 1}).size() == 9);
}

TEST_CASE("every sample point falls in exactly one face interior") {
  // Points with coordinates u/(2k) classify by token parity: even u is a
  // grid coordinate, odd u an interval interior. That token vector is the
  // unique face whose relative interior holds the point.
  GridSpec g{2, 2};
  FaceLattice lat(g);
  std::set<std::int64_t> seen;
  for (int u0 = 0; u0 <= 2 * g.k; ++u0)
    for (int u1 = 0; u1 <= 2 * g.k; ++u1) {
      GridFace f{{u0, u1}};
      std::int64_t idx = lat.index_of(f);
      CHECK(lat.face_at(idx) == f);
      CHECK(lat.dim_at(idx) == f.dim());
      seen.insert(idx);
    }
  CHECK(static_cast<std::int64_t>(seen.size()) == lat.size());
}

TEST_CASE("skeleton membership is the dimension test") {
  // A face lies in the i-skeleton exactly when its dimension is at most i;
  // nothing lies in the (-1)-skeleton.
  GridSpec g{3, 2};
  FaceLattice lat(g);
  for (std::int64_t i = 0; i < lat.size(); ++i) {
    int d = lat.dim_at(i);
    for (int skel = -1; skel <= g.n; ++skel) {
      bool in_skel = d <= skel;
      if (skel == -1) CHECK(!in_skel);
      CHECK(in_skel == (d <= skel));
    }
  }
}

TEST_CASE("usage errors") {
  CHECK_THROWS_AS(validate_spec(GridSpec{0, 1}), UsageError);
  CHECK_THROWS_AS(validate_cell(GridSpec{2, 2}, {0, 1}), UsageError);
  CHECK_THROWS_AS(validate_cell(GridSpec{2, 2}, {1, 1, 1}), UsageError);
  CHECK_THROWS_AS(intersection_dim(GridSpec{2, 2}, {1, 1}, {3, 1}), UsageError);
}

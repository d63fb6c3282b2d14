#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "util.hpp"

namespace cubetop {

// Subdivision of the unit cube [0,1]^n into k^n closed cells. Grid
// coordinates are exact rationals j/k kept as integer numerators; no
// floating point appears anywhere in this module.
struct GridSpec {
  int n = 1;
  int k = 1;

  bool operator==(const GridSpec&) const = default;

  std::int64_t cell_count() const;
  std::int64_t vertex_count() const;
  std::int64_t face_count() const;  // (2k+1)^n
};

void validate_spec(const GridSpec& spec);

// 1-based multi-index; axis s value i_s names the closed interval
// [(i_s-1)/k, i_s/k].
using Cell = std::vector<int>;

struct FaceId {
  int axis = 1;   // in [1, n]
  int sign = -1;  // -1 for {x_axis = 0}, +1 for {x_axis = 1}
};

// A grid face encoded with one token per axis in [0, 2k]:
//   even token 2j   -> coordinate fixed at j/k
//   odd  token 2j-1 -> full interval [(j-1)/k, j/k]
// Dimension = number of interval axes. A cell is the n-face with all
// tokens odd.
struct GridFace {
  std::vector<int> code;

  int dim() const;
  bool operator==(const GridFace&) const = default;
};

std::int64_t cell_linear_index(const GridSpec& spec, const Cell& c);
Cell cell_from_linear(const GridSpec& spec, std::int64_t idx);
void validate_cell(const GridSpec& spec, const Cell& c);

// Dimension of the shared closed face of two cells; -1 when disjoint.
int intersection_dim(const GridSpec& spec, const Cell& a, const Cell& b);

// The face a∩b itself, when nonempty.
std::optional<GridFace> shared_face(const GridSpec& spec, const Cell& a, const Cell& b);

bool touches_face(const GridSpec& spec, const Cell& c, FaceId f);

// Minimum shared-face dimension for chains of color i: i-1. Chains whose
// consecutive links have dimension >= i-1 avoid the (i-2)-skeleton.
int adjacency_threshold(const GridSpec& spec, int axis_color);

bool face_contained_in_cell(const GridSpec& spec, const GridFace& f, const Cell& c);
bool face_contained_in_face(const GridSpec& spec, const GridFace& f, const GridFace& g);

GridFace cell_as_face(const GridSpec& spec, const Cell& c);

// Whether the face lies inside the boundary hyperplane named by `which`.
bool face_on_hyperplane(const GridSpec& spec, const GridFace& f, FaceId which);

// Full enumeration of the (2k+1)^n grid faces with containment queries.
// Intentionally explicit and array-backed; this is the substrate of the
// reference oracle.
class FaceLattice {
public:
  static constexpr std::int64_t kDefaultGuard = 10'000'000;

  explicit FaceLattice(GridSpec spec, std::int64_t guard = kDefaultGuard);

  const GridSpec& spec() const { return spec_; }
  std::int64_t size() const { return size_; }

  std::int64_t index_of(const GridFace& f) const;
  GridFace face_at(std::int64_t idx) const;
  int dim_at(std::int64_t idx) const;

  bool contains(const GridFace& sub, const GridFace& super) const;

  // All faces of the given cell (3^n of them), as lattice indices.
  std::vector<std::int64_t> faces_of_cell(const Cell& c) const;

  // All cells having f as a face (at most 2^n of them).
  std::vector<Cell> cells_containing(const GridFace& f) const;

private:
  GridSpec spec_;
  std::int64_t size_ = 0;
  std::vector<std::int64_t> strides_;
};

}  // namespace cubetop

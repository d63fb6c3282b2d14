#include "grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace cubetop {

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

std::int64_t GridSpec::cell_count() const { return ipow(k, n); }
std::int64_t GridSpec::vertex_count() const { return ipow(k + 1, n); }
std::int64_t GridSpec::face_count() const { return ipow(2 * k + 1, n); }

void validate_spec(const GridSpec& spec) {
  if (spec.n < 1 || spec.k < 1)
    throw UsageError("grid requires n >= 1 and k >= 1, got n=" + std::to_string(spec.n) +
                     " k=" + std::to_string(spec.k));
}

int GridFace::dim() const {
  int d = 0;
  for (int t : code) d += (t % 2 != 0);
  return d;
}

void validate_cell(const GridSpec& spec, const Cell& c) {
  if (static_cast<int>(c.size()) != spec.n)
    throw UsageError("cell index has " + std::to_string(c.size()) + " coordinates, expected " +
                     std::to_string(spec.n));
  for (int v : c)
    if (v < 1 || v > spec.k)
      throw UsageError("cell coordinate " + std::to_string(v) + " outside [1, " +
                       std::to_string(spec.k) + "]");
}

std::int64_t cell_linear_index(const GridSpec& spec, const Cell& c) {
  std::int64_t idx = 0;
  std::int64_t stride = 1;
  for (int s = 0; s < spec.n; ++s) {
    idx += static_cast<std::int64_t>(c[s] - 1) * stride;
    stride *= spec.k;
  }
  return idx;
}

Cell cell_from_linear(const GridSpec& spec, std::int64_t idx) {
  Cell c(spec.n);
  for (int s = 0; s < spec.n; ++s) {
    c[s] = static_cast<int>(idx % spec.k) + 1;
    idx /= spec.k;
  }
  return c;
}

int intersection_dim(const GridSpec& spec, const Cell& a, const Cell& b) {
  validate_cell(spec, a);
  validate_cell(spec, b);
  int equal = 0;
  for (int s = 0; s < spec.n; ++s) {
    int d = std::abs(a[s] - b[s]);
    if (d >= 2) return -1;
    equal += (d == 0);
  }
  return equal;
}

std::optional<GridFace> shared_face(const GridSpec& spec, const Cell& a, const Cell& b) {
  if (intersection_dim(spec, a, b) < 0) return std::nullopt;
  GridFace f;
  f.code.resize(spec.n);
  for (int s = 0; s < spec.n; ++s) {
    if (a[s] == b[s]) {
      f.code[s] = 2 * a[s] - 1;  // shared full interval
    } else {
      f.code[s] = 2 * std::min(a[s], b[s]);  // the grid coordinate between them
    }
  }
  return f;
}

bool touches_face(const GridSpec& spec, const Cell& c, FaceId f) {
  validate_cell(spec, c);
  if (f.axis < 1 || f.axis > spec.n) throw UsageError("face axis out of range");
  int v = c[f.axis - 1];
  return f.sign < 0 ? v == 1 : v == spec.k;
}

int adjacency_threshold(const GridSpec& spec, int axis_color) {
  if (axis_color < 1 || axis_color > spec.n)
    throw UsageError("color " + std::to_string(axis_color) + " outside [1, " +
                     std::to_string(spec.n) + "]");
  return axis_color - 1;
}

bool face_contained_in_cell(const GridSpec& spec, const GridFace& f, const Cell& c) {
  for (int s = 0; s < spec.n; ++s) {
    int t = f.code[s];
    if (t % 2 != 0) {
      if (c[s] != (t + 1) / 2) return false;
    } else {
      int j = t / 2;  // fixed coordinate j/k can only bound cells j and j+1
      if (c[s] != j && c[s] != j + 1) return false;
    }
  }
  return true;
}

bool face_contained_in_face(const GridSpec& spec, const GridFace& f, const GridFace& g) {
  for (int s = 0; s < spec.n; ++s) {
    int tf = f.code[s];
    int tg = g.code[s];
    if (tf == tg) continue;
    // An interval token admits exactly its two endpoint tokens below it.
    if (tg % 2 != 0 && tf % 2 == 0 && std::abs(tf - tg) == 1) continue;
    return false;
  }
  return true;
}

GridFace cell_as_face(const GridSpec& spec, const Cell& c) {
  GridFace f;
  f.code.resize(spec.n);
  for (int s = 0; s < spec.n; ++s) f.code[s] = 2 * c[s] - 1;
  return f;
}

bool face_on_hyperplane(const GridSpec& spec, const GridFace& f, FaceId which) {
  int t = f.code[which.axis - 1];
  return which.sign < 0 ? t == 0 : t == 2 * spec.k;
}

FaceLattice::FaceLattice(GridSpec spec, std::int64_t guard) : spec_(spec) {
  validate_spec(spec_);
  size_ = spec_.face_count();
  if (size_ > guard)
    throw GuardError("face lattice would hold " + std::to_string(size_) +
                     " faces, above the guard of " + std::to_string(guard));
  strides_.resize(spec_.n);
  std::int64_t stride = 1;
  for (int s = 0; s < spec_.n; ++s) {
    strides_[s] = stride;
    stride *= 2 * spec_.k + 1;
  }
}

std::int64_t FaceLattice::index_of(const GridFace& f) const {
  std::int64_t idx = 0;
  for (int s = 0; s < spec_.n; ++s) idx += static_cast<std::int64_t>(f.code[s]) * strides_[s];
  return idx;
}

GridFace FaceLattice::face_at(std::int64_t idx) const {
  GridFace f;
  f.code.resize(spec_.n);
  for (int s = 0; s < spec_.n; ++s) {
    f.code[s] = static_cast<int>(idx % (2 * spec_.k + 1));
    idx /= 2 * spec_.k + 1;
  }
  return f;
}

int FaceLattice::dim_at(std::int64_t idx) const {
  int d = 0;
  for (int s = 0; s < spec_.n; ++s) {
    d += (idx % (2 * spec_.k + 1)) % 2 != 0;
    idx /= 2 * spec_.k + 1;
  }
  return d;
}

bool FaceLattice::contains(const GridFace& sub, const GridFace& super) const {
  return face_contained_in_face(spec_, sub, super);
}

std::vector<std::int64_t> FaceLattice::faces_of_cell(const Cell& c) const {
  validate_cell(spec_, c);
  std::vector<std::int64_t> out;
  out.reserve(ipow(3, spec_.n));
  // Per axis the options are: lower endpoint, interval, upper endpoint.
  std::vector<int> choice(spec_.n, 0);
  while (true) {
    std::int64_t idx = 0;
    for (int s = 0; s < spec_.n; ++s) {
      int t = 2 * c[s] - 2 + choice[s];
      idx += static_cast<std::int64_t>(t) * strides_[s];
    }
    out.push_back(idx);
    int s = 0;
    while (s < spec_.n && ++choice[s] == 3) choice[s++] = 0;
    if (s == spec_.n) break;
  }
  return out;
}

std::vector<Cell> FaceLattice::cells_containing(const GridFace& f) const {
  std::vector<Cell> out;
  Cell c(spec_.n);
  std::vector<std::pair<int, int>> options(spec_.n);
  for (int s = 0; s < spec_.n; ++s) {
    int t = f.code[s];
    if (t % 2 != 0) {
      options[s] = {(t + 1) / 2, (t + 1) / 2};
    } else {
      int j = t / 2;
      options[s] = {std::max(j, 1), std::min(j + 1, spec_.k)};
    }
  }
  std::vector<int> cur(spec_.n);
  for (int s = 0; s < spec_.n; ++s) cur[s] = options[s].first;
  while (true) {
    out.emplace_back(cur);
    int s = 0;
    while (s < spec_.n && ++cur[s] > options[s].second) cur[s] = options[s].first, ++s;
    if (s == spec_.n) break;
  }
  return out;
}

}  // namespace cubetop

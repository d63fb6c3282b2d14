#include "scalar_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "neighbors.hpp"
#include "util.hpp"

namespace cubetop {

namespace {

// Grid walls j/k widened only when the division rounds; dyadic grids stay
// exact, which keeps certificates sharp at exactly representable levels.
double box_lo(int c, int k) {
  double q = static_cast<double>(c - 1) / k;
  double r = std::fma(q, k, -static_cast<double>(c - 1));
  if (r > 0.0) return std::nextafter(q, -std::numeric_limits<double>::infinity());
  return q;
}
double box_hi(int c, int k) {
  double q = static_cast<double>(c) / k;
  double r = std::fma(q, k, -static_cast<double>(c));
  if (r < 0.0) return std::nextafter(q, std::numeric_limits<double>::infinity());
  return q;
}

Box cell_box(const GridSpec& grid, const Cell& c) {
  Box box(grid.n);
  for (int s = 0; s < grid.n; ++s) box[s] = {box_lo(c[s], grid.k), box_hi(c[s], grid.k)};
  return box;
}

// Interpolant value at the lattice-rational point num[s]/grid.k, where
// grid.k is a multiple of the native sampling k. Weights 0 and 1 come out
// exact, so native lattice points reproduce their samples bit for bit.
double vertex_eval_rational(const VertexField& f, const GridSpec& grid,
                            const std::vector<std::int64_t>& num) {
  int k0 = f.spec.k;
  int m = grid.k / k0;
  int n = f.spec.n;
  std::vector<int> base(n);
  std::vector<double> t(n);
  for (int s = 0; s < n; ++s) {
    std::int64_t j0 = std::min<std::int64_t>(num[s] / m, k0 - 1);  // native cell offset
    base[s] = static_cast<int>(j0);
    t[s] = static_cast<double>(num[s] - j0 * m) / m;
  }
  double acc = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double w = 1;
    std::int64_t idx = 0, stride = 1;
    for (int s = 0; s < n; ++s) {
      bool hi = (mask >> s) & 1;
      w *= hi ? t[s] : 1.0 - t[s];
      idx += static_cast<std::int64_t>(base[s] + (hi ? 1 : 0)) * stride;
      stride *= k0 + 1;
    }
    if (w != 0.0) acc += w * f.values[idx];
  }
  return acc;
}

std::pair<double, double> vertex_cell_range(const VertexField& f, const GridSpec& grid,
                                            const Cell& c) {
  int n = grid.n;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  std::vector<std::int64_t> num(n);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    for (int s = 0; s < n; ++s) num[s] = c[s] - 1 + ((mask >> s) & 1);
    double v = vertex_eval_rational(f, grid, num);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

// Range over the facet of a grid cell lying in a face hyperplane.
std::pair<double, double> facet_range(const ScalarField& f, const GridSpec& grid, const Cell& c,
                                      int axis, int sign) {
  if (const auto* vf = std::get_if<VertexField>(&f)) {
    int n = grid.n;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    std::vector<std::int64_t> num(n);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      for (int s = 0; s < n; ++s) num[s] = c[s] - 1 + ((mask >> s) & 1);
      num[axis - 1] = sign < 0 ? 0 : grid.k;
      double v = vertex_eval_rational(*vf, grid, num);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return {lo, hi};
  }
  const auto& ef = std::get<ExprField>(f);
  Box box = cell_box(grid, c);
  box[axis - 1] = sign < 0 ? std::pair<double, double>{0.0, 0.0}
                           : std::pair<double, double>{1.0, 1.0};
  return expr_range(*ef.expr, box);
}

struct GridGeom {
  GridSpec spec;
  OffsetTable offs;
  std::vector<std::int32_t> coords;  // [cell * n + s], 1-based

  explicit GridGeom(GridSpec s) : spec(s), offs(make_offsets(s, 0)) {
    std::int64_t total = spec.cell_count();
    coords.resize(total * spec.n);
    Cell c(spec.n, 1);
    for (std::int64_t i = 0; i < total; ++i) {
      for (int a = 0; a < spec.n; ++a) coords[i * spec.n + a] = c[a];
      int a = 0;
      while (a < spec.n && ++c[a] > spec.k) c[a++] = 1;
    }
  }

  bool neighbor(std::int64_t cell, std::size_t o, std::int64_t& nb) const {
    const std::vector<int>& d = offs.deltas[o];
    const std::int32_t* cc = &coords[cell * spec.n];
    for (int s = 0; s < spec.n; ++s) {
      int v = cc[s] + d[s];
      if (v < 1 || v > spec.k) return false;
    }
    nb = cell + offs.lin_deltas[o];
    return true;
  }

  std::uint32_t touch_mask(std::int64_t cell) const {
    std::uint32_t m = 0;
    const std::int32_t* cc = &coords[cell * spec.n];
    for (int s = 0; s < spec.n; ++s) {
      if (cc[s] == 1) m |= 1u << (2 * s);
      if (cc[s] == spec.k) m |= 1u << (2 * s + 1);
    }
    return m;
  }
};

// Incremental connectivity over activated cells; tracks per axis how many
// components reach both opposite faces.
class SpanUnionFind {
public:
  explicit SpanUnionFind(const GridGeom& geom)
      : geom_(geom),
        parent_(geom.spec.cell_count(), -1),
        mask_(geom.spec.cell_count(), 0),
        span_count_(geom.spec.n, 0) {}

  void activate(std::int64_t c) {
    parent_[c] = c;
    mask_[c] = geom_.touch_mask(c);
    bump(mask_[c], +1);
    std::int64_t nb;
    for (std::size_t o = 0; o < geom_.offs.deltas.size(); ++o)
      if (geom_.neighbor(c, o, nb) && parent_[nb] >= 0) unite(c, nb);
  }

  bool spans(int axis0) const { return span_count_[axis0] > 0; }

private:
  void bump(std::uint32_t m, int delta) {
    for (int s = 0; s < geom_.spec.n; ++s)
      if ((m & (1u << (2 * s))) && (m & (1u << (2 * s + 1)))) span_count_[s] += delta;
  }

  std::int64_t find(std::int64_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::int64_t a, std::int64_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    bump(mask_[a], -1);
    bump(mask_[b], -1);
    parent_[b] = a;
    mask_[a] |= mask_[b];
    bump(mask_[a], +1);
  }

  const GridGeom& geom_;
  std::vector<std::int64_t> parent_;
  std::vector<std::uint32_t> mask_;
  std::vector<int> span_count_;
};

// spans[level][axis] of the sets {key < p} (ascending) or {key > p}
// (descending), sharing one union-find across the whole scan.
std::vector<std::vector<char>> sweep_spans(const GridGeom& geom, const std::vector<double>& keys,
                                           const std::vector<double>& levels, bool less_than) {
  std::int64_t total = geom.spec.cell_count();
  std::vector<std::int64_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
    return less_than ? keys[a] < keys[b] : keys[a] > keys[b];
  });
  SpanUnionFind uf(geom);
  std::vector<std::vector<char>> out(levels.size(), std::vector<char>(geom.spec.n, 0));
  std::int64_t ptr = 0;
  auto record = [&](std::size_t li) {
    for (int s = 0; s < geom.spec.n; ++s) out[li][s] = uf.spans(s) ? 1 : 0;
  };
  if (less_than) {
    for (std::size_t li = 0; li < levels.size(); ++li) {
      while (ptr < total && keys[order[ptr]] < levels[li]) uf.activate(order[ptr++]);
      record(li);
    }
  } else {
    for (std::size_t li = levels.size(); li-- > 0;) {
      while (ptr < total && keys[order[ptr]] > levels[li]) uf.activate(order[ptr++]);
      record(li);
    }
  }
  return out;
}

// Per-level flood fill over the outer cells {lo <= p <= hi} with reusable
// scratch; reports which axes some component spans.
struct OuterScan {
  std::vector<std::int32_t> stamp;
  std::int32_t epoch = 0;
  std::vector<std::int64_t> stack;

  std::vector<char> spans(const GridGeom& geom,
                          const std::vector<std::pair<double, double>>& ranges, double p) {
    std::int64_t total = geom.spec.cell_count();
    if (stamp.size() != static_cast<std::size_t>(total)) stamp.assign(total, 0);
    ++epoch;
    std::vector<char> out(geom.spec.n, 0);
    auto in_outer = [&](std::int64_t c) {
      return ranges[c].first <= p && p <= ranges[c].second;
    };
    for (std::int64_t seed = 0; seed < total; ++seed) {
      if (!in_outer(seed) || stamp[seed] == epoch) continue;
      std::uint32_t mask = 0;
      stack.clear();
      stack.push_back(seed);
      stamp[seed] = epoch;
      while (!stack.empty()) {
        std::int64_t cur = stack.back();
        stack.pop_back();
        mask |= geom.touch_mask(cur);
        std::int64_t nb;
        for (std::size_t o = 0; o < geom.offs.deltas.size(); ++o) {
          if (geom.neighbor(cur, o, nb) && stamp[nb] != epoch && in_outer(nb)) {
            stamp[nb] = epoch;
            stack.push_back(nb);
          }
        }
      }
      for (int s = 0; s < geom.spec.n; ++s)
        if ((mask & (1u << (2 * s))) && (mask & (1u << (2 * s + 1)))) out[s] = 1;
    }
    return out;
  }
};

}  // namespace

void validate_vertex_field(const VertexField& f) {
  validate_spec(f.spec);
  if (static_cast<std::int64_t>(f.values.size()) != f.spec.vertex_count())
    throw UsageError("vertex field holds " + std::to_string(f.values.size()) +
                     " samples, expected " + std::to_string(f.spec.vertex_count()));
  for (double v : f.values)
    if (!std::isfinite(v)) throw UsageError("vertex field samples must be finite");
}

std::int64_t vertex_linear_index(const GridSpec& spec, const std::vector<int>& v) {
  std::int64_t idx = 0, stride = 1;
  for (int s = 0; s < spec.n; ++s) {
    idx += static_cast<std::int64_t>(v[s]) * stride;
    stride *= spec.k + 1;
  }
  return idx;
}

void validate_expr_field(const ExprField& f) {
  if (f.n < 1) throw UsageError("field dimension must be >= 1");
  if (!f.expr) throw UsageError("expression field has no expression");
  if (expr_max_axis(*f.expr) > f.n)
    throw UsageError("expression references axis " + std::to_string(expr_max_axis(*f.expr)) +
                     " beyond dimension " + std::to_string(f.n));
}

int field_dim(const ScalarField& f) {
  if (const auto* vf = std::get_if<VertexField>(&f)) return vf->spec.n;
  return std::get<ExprField>(f).n;
}

double field_eval(const ScalarField& f, const std::vector<double>& x) {
  int n = field_dim(f);
  if (static_cast<int>(x.size()) != n) throw UsageError("point dimension mismatch");
  for (double v : x)
    if (v < 0.0 || v > 1.0) throw UsageError("point outside the unit cube");
  if (const auto* ef = std::get_if<ExprField>(&f)) return expr_eval(*ef->expr, x);
  const auto& vf = std::get<VertexField>(f);
  int k0 = vf.spec.k;
  std::vector<int> base(n);
  std::vector<double> t(n);
  for (int s = 0; s < n; ++s) {
    double u = x[s] * k0;
    int j0 = std::min(static_cast<int>(std::floor(u)), k0 - 1);
    base[s] = j0;
    t[s] = u - j0;
  }
  double acc = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double w = 1;
    std::int64_t idx = 0, stride = 1;
    for (int s = 0; s < n; ++s) {
      bool hi = (mask >> s) & 1;
      w *= hi ? t[s] : 1.0 - t[s];
      idx += static_cast<std::int64_t>(base[s] + (hi ? 1 : 0)) * stride;
      stride *= k0 + 1;
    }
    if (w != 0.0) acc += w * vf.values[idx];
  }
  return acc;
}

VertexField sample_vertex_field(const ExprField& f, int k) {
  validate_expr_field(f);
  if (k < 1) throw UsageError("sampling resolution must be >= 1");
  VertexField out{{f.n, k}, {}};
  out.values.resize(out.spec.vertex_count());
  std::vector<double> x(f.n);
  std::vector<int> v(f.n, 0);
  for (std::int64_t i = 0; i < out.spec.vertex_count(); ++i) {
    for (int s = 0; s < f.n; ++s) x[s] = static_cast<double>(v[s]) / k;
    out.values[i] = expr_eval(*f.expr, x);
    int s = 0;
    while (s < f.n && ++v[s] > k) v[s++] = 0;
  }
  return out;
}

void validate_analysis_grid(const ScalarField& f, const GridSpec& grid) {
  validate_spec(grid);
  if (grid.n != field_dim(f)) throw UsageError("analysis grid dimension mismatch");
  if (const auto* vf = std::get_if<VertexField>(&f)) {
    if (grid.k % vf->spec.k != 0)
      throw UsageError("analysis grid k=" + std::to_string(grid.k) +
                       " must be a multiple of the sampling k=" + std::to_string(vf->spec.k));
  }
}

std::pair<double, double> cell_range(const ScalarField& f, const GridSpec& grid, const Cell& c) {
  validate_analysis_grid(f, grid);
  validate_cell(grid, c);
  if (const auto* vf = std::get_if<VertexField>(&f)) return vertex_cell_range(*vf, grid, c);
  return expr_range(*std::get<ExprField>(f).expr, cell_box(grid, c));
}

std::vector<std::pair<double, double>> all_cell_ranges(const ScalarField& f, const GridSpec& grid) {
  validate_analysis_grid(f, grid);
  std::int64_t total = grid.cell_count();
  std::vector<std::pair<double, double>> out(total);
  const auto* vf = std::get_if<VertexField>(&f);
  const auto* ef = std::get_if<ExprField>(&f);
  Cell c(grid.n, 1);
  for (std::int64_t i = 0; i < total; ++i) {
    out[i] = vf ? vertex_cell_range(*vf, grid, c) : expr_range(*ef->expr, cell_box(grid, c));
    int s = 0;
    while (s < grid.n && ++c[s] > grid.k) c[s++] = 1;
  }
  return out;
}

FiberBracket fiber_bracket(const ScalarField& f, const GridSpec& grid, double p) {
  std::vector<std::pair<double, double>> ranges = all_cell_ranges(f, grid);
  FiberBracket b{p,        CellSet(grid), CellSet(grid), CellSet(grid),
                 CellSet(grid), CellSet(grid)};
  b.level = p;
  for (std::int64_t i = 0; i < grid.cell_count(); ++i) {
    auto [lo, hi] = ranges[i];
    if (lo <= p && p <= hi) b.outer.insert(i);
    if (hi < p) b.strictly_below.insert(i);
    if (lo > p) b.strictly_above.insert(i);
    if (lo < p) b.below_outer.insert(i);
    if (hi > p) b.above_outer.insert(i);
  }
  return b;
}

bool certify_not_conn(const ScalarField& f, const GridSpec& grid, double p, int axis) {
  FiberBracket b = fiber_bracket(f, grid, p);
  return !connects(b.outer, axis, 0).has_value();
}

bool certify_sep(const ScalarField& f, const GridSpec& grid, double p, int axis) {
  FiberBracket b = fiber_bracket(f, grid, p);
  return !connects(b.below_outer, axis, 0).has_value() &&
         !connects(b.above_outer, axis, 0).has_value();
}

bool certify_not_sep(const ScalarField& f, const GridSpec& grid, double p, int axis) {
  FiberBracket b = fiber_bracket(f, grid, p);
  return connects(b.strictly_below, axis, 0).has_value() ||
         connects(b.strictly_above, axis, 0).has_value();
}

bool certify_conn(const ScalarField& f, const GridSpec& grid, double p, int axis) {
  int n = field_dim(f);
  if (n < 2) throw UsageError("positive span certification needs n >= 2");
  if (axis < 1 || axis > n) throw UsageError("axis out of range");
  // A compact set separating any other axis spans this one, and the fiber
  // is compact; one certified separation elsewhere settles membership.
  for (int j = 1; j <= n; ++j)
    if (j != axis && certify_sep(f, grid, p, j)) return true;
  return false;
}

bool pm_sign_check(const ScalarField& f, const GridSpec& grid, int axis, double p) {
  validate_analysis_grid(f, grid);
  if (axis < 1 || axis > grid.n) throw UsageError("axis out of range");
  bool le_minus = true, ge_minus = true, le_plus = true, ge_plus = true;
  Cell c(grid.n, 1);
  for (std::int64_t i = 0; i < grid.cell_count(); ++i) {
    if (c[axis - 1] == 1) {
      auto [lo, hi] = facet_range(f, grid, c, axis, -1);
      le_minus &= hi <= p;
      ge_minus &= lo >= p;
    }
    if (c[axis - 1] == grid.k) {
      auto [lo, hi] = facet_range(f, grid, c, axis, +1);
      le_plus &= hi <= p;
      ge_plus &= lo >= p;
    }
    int s = 0;
    while (s < grid.n && ++c[s] > grid.k) c[s++] = 1;
  }
  return (le_minus && ge_plus) || (ge_minus && le_plus);
}

Chain pm_product_witness(const std::vector<ScalarField>& fields, const std::vector<double>& levels,
                         const std::vector<int>& sigma, int remaining_axis, const GridSpec& grid) {
  validate_spec(grid);
  int n = grid.n;
  if (remaining_axis < 1 || remaining_axis > n) throw UsageError("remaining axis out of range");
  if (static_cast<int>(fields.size()) != n - 1 || levels.size() != fields.size() ||
      sigma.size() != fields.size())
    throw UsageError("need n-1 fields with one level and one axis assignment each");
  std::vector<char> hit(n + 1, 0);
  for (int a : sigma) {
    if (a < 1 || a > n || a == remaining_axis || hit[a])
      throw UsageError("axis assignment is not a bijection onto the other axes");
    hit[a] = 1;
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (field_dim(fields[i]) != n) throw UsageError("field dimension mismatch");
    if (!certify_sep(fields[i], grid, levels[i], sigma[i]))
      throw UsageError("separation of axis " + std::to_string(sigma[i]) +
                       " is not certified for field " + std::to_string(i + 1) +
                       " at its level; refine the grid or adjust the level");
  }
  CellSet joint = CellSet::full(grid);
  for (std::size_t i = 0; i < fields.size(); ++i)
    joint = joint & fiber_bracket(fields[i], grid, levels[i]).outer;
  std::optional<Chain> chain = connects(joint, remaining_axis, 0);
  if (!chain)
    throw SoundnessError("joint outer fiber does not span axis " +
                         std::to_string(remaining_axis) +
                         " although every factor separates its axis");
  return std::move(*chain);
}

namespace {

void merge_runs(const std::vector<double>& levels, const std::vector<char>& flags,
                std::vector<CertInterval>& out) {
  std::size_t i = 0;
  while (i < levels.size()) {
    if (!flags[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < levels.size() && flags[j + 1]) ++j;
    out.push_back({levels[i], levels[j]});
    i = j + 1;
  }
}

void check_interval_structure(const std::vector<double>& levels, const std::vector<char>& in_flags,
                              const std::vector<char>& out_flags, const std::string& what) {
  std::size_t first = levels.size(), last = 0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (in_flags[i]) {
      first = std::min(first, i);
      last = i;
    }
  }
  if (first >= levels.size()) return;
  for (std::size_t i = first; i <= last; ++i)
    if (out_flags[i])
      throw SoundnessError(what + " certified out at level " + std::to_string(levels[i]) +
                           " between certified-in levels " + std::to_string(levels[first]) +
                           " and " + std::to_string(levels[last]));
}

}  // namespace

AnalysisResult bracket_sets(const ScalarField& f, const AnalysisOptions& opts) {
  int n = field_dim(f);
  if (opts.dp <= 0) throw UsageError("scan resolution must be positive");

  AnalysisResult res;
  res.dp = opts.dp;
  if (opts.axes.empty()) {
    for (int a = 1; a <= n; ++a) res.axes.push_back(a);
  } else {
    for (int a : opts.axes) {
      if (a < 1 || a > n) throw UsageError("axis out of range");
      res.axes.push_back(a);
    }
  }

  if (!opts.k_schedule.empty()) {
    res.k_schedule = opts.k_schedule;
  } else if (const auto* vf = std::get_if<VertexField>(&f)) {
    res.k_schedule = {vf->spec.k};
  } else {
    res.k_schedule = {16, 32};
  }
  for (std::size_t i = 0; i < res.k_schedule.size(); ++i) {
    if (i > 0 && res.k_schedule[i] <= res.k_schedule[i - 1])
      throw UsageError("grid schedule must be strictly ascending");
    validate_analysis_grid(f, {n, res.k_schedule[i]});
  }

  // Scan lattice from the coarsest enclosure; finer grids only tighten it.
  std::vector<std::pair<double, double>> ranges =
      all_cell_ranges(f, {n, res.k_schedule.front()});
  double lo = ranges.front().first, hi = ranges.front().second;
  for (const auto& r : ranges) {
    lo = std::min(lo, r.first);
    hi = std::max(hi, r.second);
  }
  for (std::int64_t j = 0;; ++j) {
    double p = lo + j * opts.dp;
    if (p >= hi) break;
    res.levels.push_back(p);
  }
  res.levels.push_back(hi);
  if (const auto* vf = std::get_if<VertexField>(&f))
    res.levels.insert(res.levels.end(), vf->values.begin(), vf->values.end());
  for (double p : opts.extra_levels)
    if (p >= lo && p <= hi) res.levels.push_back(p);
  std::sort(res.levels.begin(), res.levels.end());
  res.levels.erase(std::unique(res.levels.begin(), res.levels.end()), res.levels.end());

  const std::size_t nl = res.levels.size();
  bool expr_input = std::holds_alternative<ExprField>(f);

  for (std::size_t ki = 0; ki < res.k_schedule.size(); ++ki) {
    GridSpec grid{n, res.k_schedule[ki]};
    if (ki > 0) ranges = all_cell_ranges(f, grid);
    GridGeom geom(grid);
    std::int64_t total = grid.cell_count();
    std::vector<double> key_lo(total), key_hi(total);
    for (std::int64_t i = 0; i < total; ++i) {
      key_lo[i] = ranges[i].first;
      key_hi[i] = ranges[i].second;
    }

    auto below_outer = sweep_spans(geom, key_lo, res.levels, true);    // {lo < p}
    auto strictly_below = sweep_spans(geom, key_hi, res.levels, true); // {hi < p}
    auto above_outer = sweep_spans(geom, key_hi, res.levels, false);   // {hi > p}
    auto strictly_above = sweep_spans(geom, key_lo, res.levels, false);// {lo > p}

    std::vector<std::vector<char>> outer(nl);
    struct Scratch {
      OuterScan scan;
    };
    int jobs = opts.jobs <= 0 ? default_jobs() : opts.jobs;
    std::vector<Scratch> scratch(std::max<std::int64_t>(
        1, std::min<std::int64_t>(jobs, static_cast<std::int64_t>(nl))));
    parallel_chunks(static_cast<std::int64_t>(nl), jobs,
                    [&](std::int64_t b, std::int64_t e, int chunk) {
                      for (std::int64_t li = b; li < e; ++li)
                        outer[li] = scratch[chunk].scan.spans(geom, ranges, res.levels[li]);
                    });

    res.flags.emplace_back(res.axes.size(), std::vector<LevelFlags>(nl));
    auto& kflags = res.flags.back();
    for (std::size_t li = 0; li < nl; ++li) {
      std::vector<char> sep_in_all(n);
      for (int j = 0; j < n; ++j)
        sep_in_all[j] = !below_outer[li][j] && !above_outer[li][j];
      for (std::size_t ai = 0; ai < res.axes.size(); ++ai) {
        int a0 = res.axes[ai] - 1;
        LevelFlags& fl = kflags[ai][li];
        fl.sep_in = sep_in_all[a0];
        fl.sep_out = strictly_below[li][a0] || strictly_above[li][a0];
        fl.conn_out = !outer[li][a0];
        if (n >= 2) {
          for (int j = 0; j < n && !fl.conn_in; ++j)
            if (j != a0 && sep_in_all[j]) fl.conn_in = true;
          // A separation certificate anywhere else must have lifted to a
          // span certificate here.
          for (int j = 0; j < n; ++j)
            if (j != a0 && sep_in_all[j] && !fl.conn_in)
              throw SoundnessError("separation certificate did not lift to a span certificate");
        }
        if (fl.conn_in && fl.conn_out)
          throw SoundnessError("level " + std::to_string(res.levels[li]) +
                               " certified both in and out of the connect set of axis " +
                               std::to_string(res.axes[ai]));
        if (fl.sep_in && fl.sep_out)
          throw SoundnessError("level " + std::to_string(res.levels[li]) +
                               " certified both in and out of the separate set of axis " +
                               std::to_string(res.axes[ai]));
      }
    }

    res.intervals.emplace_back(res.axes.size());
    auto& kint = res.intervals.back();
    for (std::size_t ai = 0; ai < res.axes.size(); ++ai) {
      std::vector<char> ci(nl), co(nl), si(nl), so(nl);
      for (std::size_t li = 0; li < nl; ++li) {
        ci[li] = kflags[ai][li].conn_in;
        co[li] = kflags[ai][li].conn_out;
        si[li] = kflags[ai][li].sep_in;
        so[li] = kflags[ai][li].sep_out;
      }
      check_interval_structure(res.levels, ci, co, "connect set of axis " +
                                                       std::to_string(res.axes[ai]));
      check_interval_structure(res.levels, si, so, "separate set of axis " +
                                                       std::to_string(res.axes[ai]));
      merge_runs(res.levels, ci, kint[ai].conn_in);
      merge_runs(res.levels, co, kint[ai].conn_out);
      merge_runs(res.levels, si, kint[ai].sep_in);
      merge_runs(res.levels, so, kint[ai].sep_out);
    }
  }

  // Interval enclosures are inclusion-monotone, so certificates survive
  // dyadic refinement. Plain resampling has no such guarantee; the check
  // stays off for vertex inputs.
  if (expr_input) {
    for (std::size_t ki = 0; ki + 1 < res.k_schedule.size(); ++ki) {
      if (res.k_schedule[ki + 1] % res.k_schedule[ki] != 0) continue;
      for (std::size_t ai = 0; ai < res.axes.size(); ++ai) {
        for (std::size_t li = 0; li < nl; ++li) {
          const LevelFlags& coarse = res.flags[ki][ai][li];
          const LevelFlags& fine = res.flags[ki + 1][ai][li];
          if ((coarse.conn_in && !fine.conn_in) || (coarse.conn_out && !fine.conn_out) ||
              (coarse.sep_in && !fine.sep_in) || (coarse.sep_out && !fine.sep_out))
            throw SoundnessError(
                "certificate at k=" + std::to_string(res.k_schedule[ki]) + " lost at k=" +
                std::to_string(res.k_schedule[ki + 1]) + " (axis " +
                std::to_string(res.axes[ai]) + ", level " + std::to_string(res.levels[li]) + ")");
        }
      }
    }
  }
  return res;
}

}  // namespace cubetop

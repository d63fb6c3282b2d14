#include "oracle.hpp"

#include <algorithm>
#include <random>

#include "util.hpp"

namespace cubetop::oracle {

namespace {

// Tokens of faces directly above/below in one axis: an interval token sits
// above its two endpoint tokens.
void axis_relatives(int token, int two_k, bool up, std::vector<int>& out) {
  out.clear();
  if (up) {
    if (token % 2 == 0) {
      if (token - 1 >= 0) out.push_back(token - 1);
      if (token + 1 <= two_k) out.push_back(token + 1);
    }
  } else {
    if (token % 2 != 0) {
      out.push_back(token - 1);
      out.push_back(token + 1);
    }
  }
}

class FaceGraph {
public:
  FaceGraph(const CellSet& s, bool complement, std::int64_t guard)
      : lattice_(s.spec(), guard), included_(lattice_.size(), 0) {
    const GridSpec& spec = s.spec();
    for (std::int64_t f = 0; f < lattice_.size(); ++f) {
      bool in_union = false;
      for (const Cell& c : lattice_.cells_containing(lattice_.face_at(f))) {
        if (s.contains(c)) {
          in_union = true;
          break;
        }
      }
      included_[f] = (in_union != complement) ? 1 : 0;
    }
    (void)spec;
  }

  const FaceLattice& lattice() const { return lattice_; }
  bool included(std::int64_t f) const { return included_[f] != 0; }

  // All included faces one containment step away (proper faces and
  // cofaces differing in a single axis; chains of such steps realize
  // every containment pair).
  void neighbors(std::int64_t f, std::vector<std::int64_t>& out) const {
    out.clear();
    const GridSpec& spec = lattice_.spec();
    GridFace face = lattice_.face_at(f);
    std::vector<int> rel;
    for (int axis = 0; axis < spec.n; ++axis) {
      for (bool up : {false, true}) {
        axis_relatives(face.code[axis], 2 * spec.k, up, rel);
        for (int t : rel) {
          int old = face.code[axis];
          face.code[axis] = t;
          std::int64_t idx = lattice_.index_of(face);
          face.code[axis] = old;
          if (included_[idx]) out.push_back(idx);
        }
      }
    }
  }

private:
  FaceLattice lattice_;
  std::vector<std::uint8_t> included_;
};

FaceComponents trace_components(const FaceGraph& graph) {
  const FaceLattice& lattice = graph.lattice();
  const GridSpec& spec = lattice.spec();
  std::vector<std::int32_t> label(lattice.size(), -1);
  FaceComponents out;
  std::vector<std::int64_t> queue, nbrs;
  for (std::int64_t seed = 0; seed < lattice.size(); ++seed) {
    if (!graph.included(seed) || label[seed] >= 0) continue;
    int id = static_cast<int>(out.cells.size());
    out.cells.emplace_back();
    out.touching.emplace_back(spec.n, std::pair<bool, bool>{false, false});
    queue.clear();
    queue.push_back(seed);
    label[seed] = id;
    while (!queue.empty()) {
      std::int64_t cur = queue.back();
      queue.pop_back();
      GridFace face = lattice.face_at(cur);
      if (face.dim() == spec.n) {
        Cell c(spec.n);
        for (int axis = 0; axis < spec.n; ++axis) c[axis] = (face.code[axis] + 1) / 2;
        out.cells[id].push_back(c);
      }
      for (int axis = 0; axis < spec.n; ++axis) {
        if (face.code[axis] == 0) out.touching[id][axis].first = true;
        if (face.code[axis] == 2 * spec.k) out.touching[id][axis].second = true;
      }
      graph.neighbors(cur, nbrs);
      for (std::int64_t nb : nbrs) {
        if (label[nb] < 0) {
          label[nb] = id;
          queue.push_back(nb);
        }
      }
    }
  }
  // Deterministic presentation independent of the fill order.
  for (auto& comp : out.cells)
    std::sort(comp.begin(), comp.end(), [&](const Cell& a, const Cell& b) {
      return cell_linear_index(spec, a) < cell_linear_index(spec, b);
    });
  std::vector<std::size_t> order(out.cells.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ca = out.cells[a];
    const auto& cb = out.cells[b];
    if (ca.empty() || cb.empty()) return ca.size() > cb.size();
    return cell_linear_index(spec, ca.front()) < cell_linear_index(spec, cb.front());
  });
  FaceComponents sorted;
  for (std::size_t i : order) {
    sorted.cells.push_back(std::move(out.cells[i]));
    sorted.touching.push_back(std::move(out.touching[i]));
  }
  return sorted;
}

}  // namespace

FaceComponents closed_components(const CellSet& s, std::int64_t guard) {
  return trace_components(FaceGraph(s, false, guard));
}

FaceComponents complement_components(const CellSet& s, std::int64_t guard) {
  return trace_components(FaceGraph(s, true, guard));
}

bool oracle_connects(const CellSet& s, int axis, std::int64_t guard) {
  if (axis < 1 || axis > s.spec().n) throw UsageError("axis out of range");
  FaceComponents comps = closed_components(s, guard);
  for (const auto& t : comps.touching)
    if (t[axis - 1].first && t[axis - 1].second) return true;
  return false;
}

bool oracle_separates(const CellSet& s, int axis, std::int64_t guard) {
  if (axis < 1 || axis > s.spec().n) throw UsageError("axis out of range");
  FaceComponents comps = complement_components(s, guard);
  for (const auto& t : comps.touching)
    if (t[axis - 1].first && t[axis - 1].second) return false;
  return true;
}

bool intersection_connects(const std::vector<CellSet>& sets, int axis, std::int64_t guard) {
  if (sets.empty()) throw UsageError("intersection of an empty family");
  const GridSpec& spec = sets.front().spec();
  for (const CellSet& s : sets)
    if (!(s.spec() == spec)) throw UsageError("cell sets come from different grids");
  if (axis < 1 || axis > spec.n) throw UsageError("axis out of range");

  FaceLattice lattice(spec, guard);
  // A face lies in the intersection of the unions exactly when every
  // family member has a cell containing it.
  std::vector<std::uint8_t> included(lattice.size(), 0);
  for (std::int64_t f = 0; f < lattice.size(); ++f) {
    bool in_all = true;
    std::vector<Cell> carriers = lattice.cells_containing(lattice.face_at(f));
    for (const CellSet& s : sets) {
      bool found = false;
      for (const Cell& c : carriers)
        if (s.contains(c)) {
          found = true;
          break;
        }
      if (!found) {
        in_all = false;
        break;
      }
    }
    included[f] = in_all ? 1 : 0;
  }

  std::vector<std::int32_t> label(lattice.size(), -1);
  std::vector<std::int64_t> queue;
  std::vector<int> rel;
  for (std::int64_t seed = 0; seed < lattice.size(); ++seed) {
    if (!included[seed] || label[seed] >= 0) continue;
    bool minus_side = false, plus_side = false;
    queue.clear();
    queue.push_back(seed);
    label[seed] = 0;
    while (!queue.empty()) {
      std::int64_t cur = queue.back();
      queue.pop_back();
      GridFace face = lattice.face_at(cur);
      if (face.code[axis - 1] == 0) minus_side = true;
      if (face.code[axis - 1] == 2 * spec.k) plus_side = true;
      for (int a = 0; a < spec.n; ++a) {
        for (bool up : {false, true}) {
          axis_relatives(face.code[a], 2 * spec.k, up, rel);
          for (int t : rel) {
            int old = face.code[a];
            face.code[a] = t;
            std::int64_t idx = lattice.index_of(face);
            face.code[a] = old;
            if (included[idx] && label[idx] < 0) {
              label[idx] = 0;
              queue.push_back(idx);
            }
          }
        }
      }
    }
    if (minus_side && plus_side) return true;
  }
  return false;
}

namespace {

bool instance_matches(const CellSet& s, std::int64_t guard) {
  const GridSpec& spec = s.spec();

  FaceComponents closed = closed_components(s, guard);
  std::vector<std::vector<Cell>> fast_closed = components(s, 0);
  if (closed.cells != fast_closed) return false;

  FaceComponents open = complement_components(s, guard);
  ComplementComponents fast_open = cubetop::complement_components(s);
  if (open.cells != fast_open.components) return false;
  if (open.touching != fast_open.touching) return false;

  for (int axis = 1; axis <= spec.n; ++axis) {
    if (oracle_connects(s, axis, guard) != connects(s, axis, 0).has_value()) return false;
    if (oracle_separates(s, axis, guard) != separates(s, axis).has_value()) return false;
  }
  return true;
}

}  // namespace

EquivalenceReport equivalence_check(GridSpec spec, bool exhaustive, std::uint64_t seed,
                                    std::int64_t trials, std::int64_t guard) {
  validate_spec(spec);
  EquivalenceReport rep;
  rep.spec = spec;
  rep.exhaustive = exhaustive;
  rep.seed = seed;
  std::int64_t cells = spec.cell_count();
  if (exhaustive) {
    if (cells > 24) throw GuardError("exhaustive equivalence needs k^n <= 24 cells");
    std::int64_t total = std::int64_t{1} << cells;
    for (std::int64_t bits = 0; bits < total; ++bits) {
      CellSet s(spec);
      for (std::int64_t i = 0; i < cells; ++i)
        if ((bits >> i) & 1) s.insert(i);
      ++rep.instances;
      if (!instance_matches(s, guard)) ++rep.mismatches;
    }
  } else {
    if (trials <= 0) throw UsageError("trial count must be positive");
    for (std::int64_t t = 0; t < trials; ++t) {
      std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
      std::uniform_real_distribution<double> density(0.1, 0.9);
      std::bernoulli_distribution member(density(rng));
      CellSet s(spec);
      for (std::int64_t i = 0; i < cells; ++i)
        if (member(rng)) s.insert(i);
      ++rep.instances;
      if (!instance_matches(s, guard)) ++rep.mismatches;
    }
  }
  return rep;
}

}  // namespace cubetop::oracle

#include "topology.hpp"

#include <algorithm>
#include <string>

#include "neighbors.hpp"

namespace cubetop {

bool cell_lex_less(const Cell& a, const Cell& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<std::vector<Cell>> components(const CellSet& s, int min_dim) {
  const GridSpec& spec = s.spec();
  if (min_dim < 0 || min_dim > spec.n) throw UsageError("min shared dimension outside [0, n]");
  OffsetTable offs = make_offsets(spec, min_dim);
  std::vector<int> label(s.universe_size(), -1);
  std::vector<std::vector<Cell>> out;
  std::vector<std::int64_t> queue;
  for (std::int64_t seed = 0; seed < s.universe_size(); ++seed) {
    if (!s.contains(seed) || label[seed] >= 0) continue;
    int id = static_cast<int>(out.size());
    out.emplace_back();
    queue.clear();
    queue.push_back(seed);
    label[seed] = id;
    while (!queue.empty()) {
      std::int64_t cur = queue.back();
      queue.pop_back();
      Cell c = cell_from_linear(spec, cur);
      out[id].push_back(c);
      for (std::size_t o = 0; o < offs.deltas.size(); ++o) {
        if (!offset_in_bounds(spec, c, offs.deltas[o])) continue;
        std::int64_t nb = cur + offs.lin_deltas[o];
        if (s.contains(nb) && label[nb] < 0) {
          label[nb] = id;
          queue.push_back(nb);
        }
      }
    }
    std::sort(out[id].begin(), out[id].end(),
              [&](const Cell& a, const Cell& b) {
                return cell_linear_index(spec, a) < cell_linear_index(spec, b);
              });
  }
  return out;
}

std::optional<Chain> connects(const CellSet& s, int axis, int min_dim) {
  const GridSpec& spec = s.spec();
  if (axis < 1 || axis > spec.n) throw UsageError("axis out of range");
  if (min_dim < 0 || min_dim > spec.n) throw UsageError("min shared dimension outside [0, n]");
  if (s.empty()) return std::nullopt;

  OffsetTable offs = make_offsets(spec, min_dim);
  // Breadth-first distances to the far face, then a greedy walk from the
  // lexicographically smallest nearest start cell; any prefix of the walk
  // extends to a shortest chain, so the result is the lexicographically
  // smallest shortest one.
  std::vector<std::int32_t> dist_to_goal(s.universe_size(), -1);
  std::vector<std::int64_t> frontier, next;
  for (std::int64_t i = 0; i < s.universe_size(); ++i) {
    if (!s.contains(i)) continue;
    Cell c = cell_from_linear(spec, i);
    if (c[axis - 1] == spec.k) {
      dist_to_goal[i] = 0;
      frontier.push_back(i);
    }
  }
  std::int32_t level = 0;
  while (!frontier.empty()) {
    ++level;
    next.clear();
    for (std::int64_t cur : frontier) {
      Cell c = cell_from_linear(spec, cur);
      for (std::size_t o = 0; o < offs.deltas.size(); ++o) {
        if (!offset_in_bounds(spec, c, offs.deltas[o])) continue;
        std::int64_t nb = cur + offs.lin_deltas[o];
        if (s.contains(nb) && dist_to_goal[nb] < 0) {
          dist_to_goal[nb] = level;
          next.push_back(nb);
        }
      }
    }
    frontier.swap(next);
  }

  std::optional<Cell> start;
  std::int32_t best = -1;
  for (std::int64_t i = 0; i < s.universe_size(); ++i) {
    if (!s.contains(i) || dist_to_goal[i] < 0) continue;
    Cell c = cell_from_linear(spec, i);
    if (c[axis - 1] != 1) continue;
    if (best < 0 || dist_to_goal[i] < best ||
        (dist_to_goal[i] == best && cell_lex_less(c, *start))) {
      best = dist_to_goal[i];
      start = c;
    }
  }
  if (!start) return std::nullopt;

  Chain chain;
  chain.axis = axis;
  chain.threshold = min_dim;
  chain.cells.push_back(*start);
  Cell cur = *start;
  std::int64_t cur_lin = cell_linear_index(spec, cur);
  for (std::int32_t t = best; t > 0; --t) {
    std::optional<Cell> pick;
    std::int64_t pick_lin = -1;
    for (std::size_t o = 0; o < offs.deltas.size(); ++o) {
      if (!offset_in_bounds(spec, cur, offs.deltas[o])) continue;
      std::int64_t nb = cur_lin + offs.lin_deltas[o];
      if (!s.contains(nb) || dist_to_goal[nb] != t - 1) continue;
      Cell cand = cell_from_linear(spec, nb);
      if (!pick || cell_lex_less(cand, *pick)) {
        pick = cand;
        pick_lin = nb;
      }
    }
    chain.cells.push_back(*pick);
    cur = *pick;
    cur_lin = pick_lin;
  }
  chain.link_dims.reserve(chain.cells.size() - 1);
  for (std::size_t j = 0; j + 1 < chain.cells.size(); ++j)
    chain.link_dims.push_back(intersection_dim(spec, chain.cells[j], chain.cells[j + 1]));
  return chain;
}

bool complement_adjacent(const GridSpec& spec, const Cell& a, const Cell& b, const CellSet& s) {
  if (s.contains(a) || s.contains(b)) throw UsageError("complement adjacency queried on a member cell");
  if (a == b) throw UsageError("complement adjacency queried on a single cell");
  std::optional<GridFace> f = shared_face(spec, a, b);
  if (!f) return false;
  // Enumerate the cells having a∩b as a face; if any belongs to S, the
  // relative interior of the shared face lies inside the union of S.
  std::vector<std::pair<int, int>> ranges(spec.n);
  for (int axis = 0; axis < spec.n; ++axis) {
    int t = f->code[axis];
    if (t % 2 != 0) {
      ranges[axis] = {(t + 1) / 2, (t + 1) / 2};
    } else {
      int j = t / 2;
      ranges[axis] = {std::max(j, 1), std::min(j + 1, spec.k)};
    }
  }
  Cell cand(spec.n);
  for (int axis = 0; axis < spec.n; ++axis) cand[axis] = ranges[axis].first;
  while (true) {
    if (s.contains(cand)) return false;
    int axis = 0;
    while (axis < spec.n && ++cand[axis] > ranges[axis].second)
      cand[axis] = ranges[axis].first, ++axis;
    if (axis == spec.n) break;
  }
  return true;
}

ComplementComponents complement_components(const CellSet& s) {
  const GridSpec& spec = s.spec();
  OffsetTable offs = make_offsets(spec, 0);
  std::vector<int> label(s.universe_size(), -1);
  ComplementComponents out;
  std::vector<std::int64_t> queue;
  for (std::int64_t seed = 0; seed < s.universe_size(); ++seed) {
    if (s.contains(seed) || label[seed] >= 0) continue;
    int id = static_cast<int>(out.components.size());
    out.components.emplace_back();
    out.touching.emplace_back(spec.n, std::pair<bool, bool>{false, false});
    queue.clear();
    queue.push_back(seed);
    label[seed] = id;
    while (!queue.empty()) {
      std::int64_t cur = queue.back();
      queue.pop_back();
      Cell c = cell_from_linear(spec, cur);
      out.components[id].push_back(c);
      for (int a = 0; a < spec.n; ++a) {
        if (c[a] == 1) out.touching[id][a].first = true;
        if (c[a] == spec.k) out.touching[id][a].second = true;
      }
      for (std::size_t o = 0; o < offs.deltas.size(); ++o) {
        if (!offset_in_bounds(spec, c, offs.deltas[o])) continue;
        std::int64_t nb = cur + offs.lin_deltas[o];
        if (s.contains(nb) || label[nb] >= 0) continue;
        Cell nc = cell_from_linear(spec, nb);
        if (!complement_adjacent(spec, c, nc, s)) continue;
        label[nb] = id;
        queue.push_back(nb);
      }
    }
    std::sort(out.components[id].begin(), out.components[id].end(),
              [&](const Cell& a, const Cell& b) {
                return cell_linear_index(spec, a) < cell_linear_index(spec, b);
              });
  }
  return out;
}

std::optional<SeparationCertificate> separates(const CellSet& s, int axis) {
  const GridSpec& spec = s.spec();
  if (axis < 1 || axis > spec.n) throw UsageError("axis out of range");
  ComplementComponents comps = complement_components(s);
  SeparationCertificate cert;
  cert.axis = axis;
  cert.components = std::move(comps.components);
  for (std::size_t id = 0; id < cert.components.size(); ++id) {
    bool minus_side = comps.touching[id][axis - 1].first;
    bool plus_side = comps.touching[id][axis - 1].second;
    if (minus_side && plus_side) return std::nullopt;
    if (minus_side) cert.touching_minus.push_back(static_cast<int>(id));
    if (plus_side) cert.touching_plus.push_back(static_cast<int>(id));
  }
  return cert;
}

std::vector<bool> separates_all_axes(const CellSet& s) {
  std::vector<bool> out(s.spec().n);
  for (int axis = 1; axis <= s.spec().n; ++axis) out[axis - 1] = separates(s, axis).has_value();
  return out;
}

void verify_chain(const Chain& chain, const CellSet& s) {
  const GridSpec& spec = s.spec();
  if (chain.cells.empty()) throw SoundnessError("chain is empty");
  for (const Cell& c : chain.cells)
    if (!s.contains(c)) throw SoundnessError("chain leaves the cell set");
  if (!touches_face(spec, chain.cells.front(), {chain.axis, -1}))
    throw SoundnessError("chain does not start on the lower face");
  if (!touches_face(spec, chain.cells.back(), {chain.axis, +1}))
    throw SoundnessError("chain does not end on the upper face");
  if (chain.link_dims.size() + 1 != chain.cells.size())
    throw SoundnessError("chain link count mismatch");
  for (std::size_t j = 0; j + 1 < chain.cells.size(); ++j) {
    int d = intersection_dim(spec, chain.cells[j], chain.cells[j + 1]);
    if (d != chain.link_dims[j]) throw SoundnessError("chain link dimension mismatch");
    if (d < chain.threshold) throw SoundnessError("chain link below declared threshold");
  }
}

void verify_certificate(const SeparationCertificate& cert, const CellSet& s) {
  const GridSpec& spec = s.spec();
  std::vector<int> label(s.universe_size(), -1);
  std::int64_t covered = 0;
  for (std::size_t id = 0; id < cert.components.size(); ++id) {
    for (const Cell& c : cert.components[id]) {
      std::int64_t idx = cell_linear_index(spec, c);
      if (s.contains(idx)) throw SoundnessError("certificate component contains a member cell");
      if (label[idx] >= 0) throw SoundnessError("certificate components overlap");
      label[idx] = static_cast<int>(id);
      ++covered;
    }
  }
  if (covered != s.universe_size() - s.size())
    throw SoundnessError("certificate does not cover the complement");

  OffsetTable offs = make_offsets(spec, 0);
  for (std::int64_t i = 0; i < s.universe_size(); ++i) {
    if (s.contains(i)) continue;
    Cell c = cell_from_linear(spec, i);
    for (std::size_t o = 0; o < offs.deltas.size(); ++o) {
      if (!offset_in_bounds(spec, c, offs.deltas[o])) continue;
      std::int64_t nb = i + offs.lin_deltas[o];
      if (s.contains(nb)) continue;
      Cell nc = cell_from_linear(spec, nb);
      if (complement_adjacent(spec, c, nc, s) && label[i] != label[nb])
        throw SoundnessError("adjacent complement cells in different certificate components");
    }
  }

  // Components must be internally connected, not merely closed under
  // adjacency.
  for (std::size_t id = 0; id < cert.components.size(); ++id) {
    const auto& comp = cert.components[id];
    if (comp.empty()) throw SoundnessError("empty certificate component");
    std::vector<std::int64_t> queue{cell_linear_index(spec, comp[0])};
    std::vector<char> seen(s.universe_size(), 0);
    seen[queue[0]] = 1;
    std::size_t reached = 0;
    while (!queue.empty()) {
      std::int64_t cur = queue.back();
      queue.pop_back();
      ++reached;
      Cell c = cell_from_linear(spec, cur);
      for (std::size_t o = 0; o < offs.deltas.size(); ++o) {
        if (!offset_in_bounds(spec, c, offs.deltas[o])) continue;
        std::int64_t nb = cur + offs.lin_deltas[o];
        if (seen[nb] || s.contains(nb) || label[nb] != static_cast<int>(id)) continue;
        Cell nc = cell_from_linear(spec, nb);
        if (!complement_adjacent(spec, c, nc, s)) continue;
        seen[nb] = 1;
        queue.push_back(nb);
      }
    }
    if (reached != comp.size()) throw SoundnessError("certificate component is not connected");
  }

  for (std::size_t id = 0; id < cert.components.size(); ++id) {
    bool minus_side = false, plus_side = false;
    for (const Cell& c : cert.components[id]) {
      minus_side |= c[cert.axis - 1] == 1;
      plus_side |= c[cert.axis - 1] == spec.k;
    }
    bool listed_minus = std::find(cert.touching_minus.begin(), cert.touching_minus.end(),
                                  static_cast<int>(id)) != cert.touching_minus.end();
    bool listed_plus = std::find(cert.touching_plus.begin(), cert.touching_plus.end(),
                                 static_cast<int>(id)) != cert.touching_plus.end();
    if (minus_side != listed_minus || plus_side != listed_plus)
      throw SoundnessError("certificate face-touching lists are wrong");
    if (minus_side && plus_side)
      throw SoundnessError("certificate component touches both opposite faces");
  }
}

bool closed_unions_intersect(const CellSet& a, const CellSet& b) {
  if (!(a.spec() == b.spec())) throw UsageError("cell sets come from different grids");
  const GridSpec& spec = a.spec();
  OffsetTable offs = make_offsets(spec, 0);
  for (std::int64_t i = 0; i < a.universe_size(); ++i) {
    if (!a.contains(i)) continue;
    if (b.contains(i)) return true;
    Cell c = cell_from_linear(spec, i);
    for (std::size_t o = 0; o < offs.deltas.size(); ++o) {
      if (!offset_in_bounds(spec, c, offs.deltas[o])) continue;
      if (b.contains(i + offs.lin_deltas[o])) return true;
    }
  }
  return false;
}

}  // namespace cubetop

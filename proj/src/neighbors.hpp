#pragma once

#include <cstdint>
#include <vector>

#include "grid.hpp"

namespace cubetop {

// Neighbour offsets in {-1,0,1}^n (zero excluded). An offset with m nonzero
// axes reaches cells whose shared face has dimension n - m, so a minimum
// shared dimension d keeps offsets with at most n - d nonzero axes.
struct OffsetTable {
  std::vector<std::vector<int>> deltas;
  std::vector<std::int64_t> lin_deltas;
};

inline OffsetTable make_offsets(const GridSpec& spec, int min_dim) {
  OffsetTable t;
  std::vector<int> delta(spec.n, -1);
  std::vector<std::int64_t> strides(spec.n);
  std::int64_t stride = 1;
  for (int s = 0; s < spec.n; ++s) {
    strides[s] = stride;
    stride *= spec.k;
  }
  while (true) {
    int nonzero = 0;
    for (int v : delta) nonzero += (v != 0);
    if (nonzero > 0 && spec.n - nonzero >= min_dim) {
      std::int64_t lin = 0;
      for (int s = 0; s < spec.n; ++s) lin += static_cast<std::int64_t>(delta[s]) * strides[s];
      t.deltas.push_back(delta);
      t.lin_deltas.push_back(lin);
    }
    int s = 0;
    while (s < spec.n && ++delta[s] == 2) delta[s++] = -1;
    if (s == spec.n) break;
  }
  return t;
}

inline bool offset_in_bounds(const GridSpec& spec, const Cell& c, const std::vector<int>& delta) {
  for (int s = 0; s < spec.n; ++s) {
    int v = c[s] + delta[s];
    if (v < 1 || v > spec.k) return false;
  }
  return true;
}

}  // namespace cubetop

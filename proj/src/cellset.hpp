#pragma once

#include <cstdint>
#include <vector>

#include "grid.hpp"

namespace cubetop {

// Subset of the k^n cells, dense membership array indexed by the row-major
// linear cell index (axis 1 fastest). Immutable value semantics: all set
// algebra returns new sets.
class CellSet {
public:
  explicit CellSet(GridSpec spec) : spec_(spec), bits_(spec.cell_count(), 0) {
    validate_spec(spec);
  }

  static CellSet full(GridSpec spec) {
    CellSet s(spec);
    std::fill(s.bits_.begin(), s.bits_.end(), 1);
    s.count_ = s.bits_.size();
    return s;
  }

  static CellSet of_cells(GridSpec spec, const std::vector<Cell>& cells) {
    CellSet s(spec);
    for (const Cell& c : cells) s.insert(c);
    return s;
  }

  const GridSpec& spec() const { return spec_; }
  std::int64_t universe_size() const { return static_cast<std::int64_t>(bits_.size()); }
  std::int64_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(std::int64_t idx) const { return bits_[idx] != 0; }
  bool contains(const Cell& c) const { return bits_[cell_linear_index(spec_, c)] != 0; }

  void insert(const Cell& c) {
    validate_cell(spec_, c);
    insert(cell_linear_index(spec_, c));
  }
  void insert(std::int64_t idx) {
    if (!bits_[idx]) {
      bits_[idx] = 1;
      ++count_;
    }
  }
  void erase(std::int64_t idx) {
    if (bits_[idx]) {
      bits_[idx] = 0;
      --count_;
    }
  }

  std::vector<Cell> cells() const {
    std::vector<Cell> out;
    out.reserve(count_);
    for (std::int64_t i = 0; i < universe_size(); ++i)
      if (bits_[i]) out.push_back(cell_from_linear(spec_, i));
    return out;
  }

  std::vector<std::int64_t> indices() const {
    std::vector<std::int64_t> out;
    out.reserve(count_);
    for (std::int64_t i = 0; i < universe_size(); ++i)
      if (bits_[i]) out.push_back(i);
    return out;
  }

  CellSet operator|(const CellSet& o) const { return combine(o, [](bool a, bool b) { return a || b; }); }
  CellSet operator&(const CellSet& o) const { return combine(o, [](bool a, bool b) { return a && b; }); }
  CellSet operator-(const CellSet& o) const { return combine(o, [](bool a, bool b) { return a && !b; }); }
  CellSet operator~() const {
    CellSet r(spec_);
    for (std::int64_t i = 0; i < universe_size(); ++i)
      if (!bits_[i]) r.insert(i);
    return r;
  }

  bool operator==(const CellSet& o) const { return spec_ == o.spec_ && bits_ == o.bits_; }

private:
  template <typename Op>
  CellSet combine(const CellSet& o, Op op) const {
    if (!(spec_ == o.spec_)) throw UsageError("cell sets come from different grids");
    CellSet r(spec_);
    for (std::int64_t i = 0; i < universe_size(); ++i)
      if (op(bits_[i] != 0, o.bits_[i] != 0)) r.insert(i);
    return r;
  }

  GridSpec spec_;
  std::vector<std::uint8_t> bits_;
  std::int64_t count_ = 0;
};

}  // namespace cubetop

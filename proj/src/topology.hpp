#pragma once

#include <optional>
#include <vector>

#include "cellset.hpp"

namespace cubetop {

// Cell chain P_1..P_r of one color/axis: P_1 touches {x_axis = 0}, P_r
// touches {x_axis = 1}, and every consecutive pair shares a face of
// dimension >= threshold.
struct Chain {
  int axis = 1;
  int threshold = 0;
  std::vector<Cell> cells;
  std::vector<int> link_dims;  // size cells.size() - 1
};

// Witness that the complement of a cell set has no component reaching from
// {x_axis = 0} to {x_axis = 1}: the complement cells partitioned into
// components, with the face-touching components listed per side.
struct SeparationCertificate {
  int axis = 1;
  std::vector<std::vector<Cell>> components;
  std::vector<int> touching_minus;  // component indices meeting {x_axis = 0}
  std::vector<int> touching_plus;   // component indices meeting {x_axis = 1}
};

// Lexicographic order on index tuples (axis 1 most significant); the
// tie-break order for witness chains.
bool cell_lex_less(const Cell& a, const Cell& b);

// Maximal classes of S connected by shared faces of dimension >= min_dim.
// Components ordered by their lowest row-major cell index, cells within a
// component by row-major index.
std::vector<std::vector<Cell>> components(const CellSet& s, int min_dim);

// Chain through S from face (axis,-) to face (axis,+) under min_dim
// adjacency; shortest by link count, ties broken toward the
// lexicographically smallest cell sequence. With min_dim = 0, presence is
// exactly "the union of S connects the opposite faces of that axis".
std::optional<Chain> connects(const CellSet& s, int axis, int min_dim);

// Whether two non-member cells are adjacent inside the open complement of
// S: their shared face must exist and must not be a face of any member
// cell (otherwise its relative interior is swallowed by the union of S).
bool complement_adjacent(const GridSpec& spec, const Cell& a, const Cell& b, const CellSet& s);

// Components of the non-member cells under complement adjacency, with
// face-touching per axis. A complement cell counts as touching a face when
// its own facet lies in that hyperplane; that facet belongs to no other
// cell, so its relative interior always survives in the complement.
struct ComplementComponents {
  std::vector<std::vector<Cell>> components;
  std::vector<std::vector<std::pair<bool, bool>>> touching;  // [component][axis] -/+
};

ComplementComponents complement_components(const CellSet& s);

// Certificate present exactly when the union of S separates the opposite
// faces of the axis, i.e. no complement component touches both.
std::optional<SeparationCertificate> separates(const CellSet& s, int axis);

std::vector<bool> separates_all_axes(const CellSet& s);

// Independent validity re-checks; throw SoundnessError on any defect.
void verify_chain(const Chain& chain, const CellSet& s);
void verify_certificate(const SeparationCertificate& cert, const CellSet& s);

// Whether the closed unions of two cell sets intersect (some pair of
// member cells shares a face).
bool closed_unions_intersect(const CellSet& a, const CellSet& b);

}  // namespace cubetop

#pragma once

#include <vector>

#include "cellset.hpp"
#include "topology.hpp"

namespace cubetop::oracle {

// Reference semantics computed on the explicit face lattice: the union of
// closed cells (and its open complement) decompose into relative interiors
// of grid faces, with adjacency given by face containment. Deliberately
// slow and simple; shares no connectivity code with the fast engine.

struct FaceComponents {
  // Cell projection of each face-graph component, ordered by lowest
  // row-major cell index; cells sorted the same way.
  std::vector<std::vector<Cell>> cells;
  // Per component, per axis (0-based), whether it holds a face inside
  // {x_axis = 0} / {x_axis = 1}.
  std::vector<std::vector<std::pair<bool, bool>>> touching;
};

FaceComponents closed_components(const CellSet& s,
                                 std::int64_t guard = FaceLattice::kDefaultGuard);

FaceComponents complement_components(const CellSet& s,
                                     std::int64_t guard = FaceLattice::kDefaultGuard);

bool oracle_connects(const CellSet& s, int axis,
                     std::int64_t guard = FaceLattice::kDefaultGuard);

bool oracle_separates(const CellSet& s, int axis,
                      std::int64_t guard = FaceLattice::kDefaultGuard);

// Whether the set-theoretic intersection of the closed unions connects the
// opposite faces of the axis. The intersection of cell unions is a union
// of grid faces, not of cells, so only the face engine can answer this.
bool intersection_connects(const std::vector<CellSet>& sets, int axis,
                           std::int64_t guard = FaceLattice::kDefaultGuard);

struct EquivalenceReport {
  GridSpec spec;
  bool exhaustive = true;
  std::int64_t instances = 0;
  std::int64_t mismatches = 0;
  std::uint64_t seed = 0;
};

// Cross-validates the fast engine against the face-lattice reference on
// every cell set (exhaustive) or on seeded random ones: closed component
// partitions, complement partitions with face touching, and the two
// predicates on every axis.
EquivalenceReport equivalence_check(GridSpec spec, bool exhaustive, std::uint64_t seed,
                                    std::int64_t trials,
                                    std::int64_t guard = FaceLattice::kDefaultGuard);

}  // namespace cubetop::oracle

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "topology.hpp"

namespace cubetop {

// Color assignment F: cells -> [1, n], stored per row-major cell index.
struct Labeling {
  GridSpec spec;
  std::vector<int> colors;
};

void validate_labeling(const Labeling& lab);
CellSet color_class(const Labeling& lab, int color);

// Integer value per cell, changing by at most 1 between intersecting cells.
struct IntegerField {
  GridSpec spec;
  std::vector<long long> values;
};

void validate_integer_field(const IntegerField& f);  // includes the Lipschitz check

struct WitnessResult {
  int axis = 1;
  Chain chain;
};

// Smallest color i whose class spans axis i; generalized raises the link
// threshold to i-1 (links of dimension >= i-1 avoid the (i-2)-skeleton).
// Existence is guaranteed; a failed search throws SoundnessError with the
// full labeling dumped.
WitnessResult steinhaus_witness(const Labeling& lab, bool generalized);

// Same search over an explicit closed cover (sets may overlap); thresholds
// are always the generalized ones.
WitnessResult lebesgue_witness(const std::vector<CellSet>& cover);

struct LevelResult {
  bool connecting = false;  // connecting level vs separating level
  long long level = 0;
  std::optional<Chain> chain;                       // set on the connecting branch
  std::optional<SeparationCertificate> certificate;  // set on the separating branch
};

// Scans levels ascending: first the smallest p whose level set spans the
// axis, else the smallest p whose level set separates it. One branch
// always exists for adjacency-Lipschitz fields.
LevelResult separating_level(const IntegerField& f, int axis);

enum class VerifyMode { plain, generalized, lebesgue, level };

VerifyMode parse_verify_mode(const std::string& name);
std::string verify_mode_name(VerifyMode mode);

struct VerifyReport {
  VerifyMode mode = VerifyMode::plain;
  GridSpec spec;
  bool exhaustive = true;
  std::int64_t candidates = 0;  // enumeration size before any filtering
  std::int64_t total = 0;       // instances actually checked
  std::int64_t failures = 0;
  // plain/generalized/lebesgue: counts per returned witness color.
  // level: [connecting-branch count, separating-branch count].
  std::vector<std::int64_t> histogram;
  int max_chain_length = 0;
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
};

VerifyReport exhaustive_verify(GridSpec spec, VerifyMode mode,
                               std::int64_t guard = 10'000'000, int jobs = 0);

VerifyReport randomized_verify(GridSpec spec, VerifyMode mode, std::uint64_t seed,
                               std::int64_t trials, int jobs = 0);

// Number of instances exhaustive_verify would enumerate.
std::int64_t enumeration_size(GridSpec spec, VerifyMode mode);

}  // namespace cubetop

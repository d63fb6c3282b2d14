#include "chessboard.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "util.hpp"

namespace cubetop {

namespace {

constexpr int kLevelModeValues = 3;  // exhaustive level mode draws values from {0,1,2}

std::string dump_labeling(const Labeling& lab) {
  std::ostringstream os;
  os << "n=" << lab.spec.n << " k=" << lab.spec.k << " colors=[";
  for (std::size_t i = 0; i < lab.colors.size(); ++i) os << (i ? "," : "") << lab.colors[i];
  os << "]";
  return os.str();
}

std::string dump_field(const IntegerField& f) {
  std::ostringstream os;
  os << "n=" << f.spec.n << " k=" << f.spec.k << " values=[";
  for (std::size_t i = 0; i < f.values.size(); ++i) os << (i ? "," : "") << f.values[i];
  os << "]";
  return os.str();
}

// Saturating b^e, used for enumeration sizes.
std::int64_t checked_pow(std::int64_t base, std::int64_t exp) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < exp; ++i) {
    if (r > (std::int64_t{1} << 62) / base) return std::int64_t{1} << 62;
    r *= base;
  }
  return r;
}

bool lipschitz_ok(const IntegerField& f) {
  const GridSpec& spec = f.spec;
  std::int64_t total = spec.cell_count();
  for (std::int64_t i = 0; i < total; ++i) {
    Cell a = cell_from_linear(spec, i);
    // Forward offsets only; the condition is symmetric.
    std::vector<int> delta(spec.n, -1);
    while (true) {
      bool nonzero = false, forward = false;
      for (int s = spec.n - 1; s >= 0; --s) {
        if (delta[s] != 0) {
          nonzero = true;
          forward = delta[s] > 0;
          break;
        }
      }
      if (nonzero && forward) {
        bool ok = true;
        std::int64_t nb = 0, stride = 1;
        for (int s = 0; s < spec.n; ++s) {
          int v = a[s] + delta[s];
          if (v < 1 || v > spec.k) {
            ok = false;
            break;
          }
          nb += static_cast<std::int64_t>(v - 1) * stride;
          stride *= spec.k;
        }
        if (ok && std::llabs(f.values[i] - f.values[nb]) > 1) return false;
      }
      int s = 0;
      while (s < spec.n && ++delta[s] == 2) delta[s++] = -1;
      if (s == spec.n) break;
    }
  }
  return true;
}

}  // namespace

void validate_labeling(const Labeling& lab) {
  validate_spec(lab.spec);
  if (static_cast<std::int64_t>(lab.colors.size()) != lab.spec.cell_count())
    throw UsageError("labeling holds " + std::to_string(lab.colors.size()) + " colors, expected " +
                     std::to_string(lab.spec.cell_count()));
  for (int c : lab.colors)
    if (c < 1 || c > lab.spec.n)
      throw UsageError("color " + std::to_string(c) + " outside [1, " + std::to_string(lab.spec.n) +
                       "]");
}

CellSet color_class(const Labeling& lab, int color) {
  CellSet s(lab.spec);
  for (std::int64_t i = 0; i < lab.spec.cell_count(); ++i)
    if (lab.colors[i] == color) s.insert(i);
  return s;
}

void validate_integer_field(const IntegerField& f) {
  validate_spec(f.spec);
  if (static_cast<std::int64_t>(f.values.size()) != f.spec.cell_count())
    throw UsageError("integer field holds " + std::to_string(f.values.size()) +
                     " values, expected " + std::to_string(f.spec.cell_count()));
  if (!lipschitz_ok(f))
    throw UsageError("integer field violates the adjacency-Lipschitz condition: " + dump_field(f));
}

WitnessResult steinhaus_witness(const Labeling& lab, bool generalized) {
  validate_labeling(lab);
  for (int i = 1; i <= lab.spec.n; ++i) {
    int d = generalized ? adjacency_threshold(lab.spec, i) : 0;
    if (auto chain = connects(color_class(lab, i), i, d)) return {i, std::move(*chain)};
  }
  throw SoundnessError("no spanning color class in any axis; " + dump_labeling(lab));
}

WitnessResult lebesgue_witness(const std::vector<CellSet>& cover) {
  if (cover.empty()) throw UsageError("empty cover");
  const GridSpec& spec = cover.front().spec();
  if (static_cast<int>(cover.size()) != spec.n)
    throw UsageError("cover needs exactly n sets");
  CellSet all(spec);
  for (const CellSet& s : cover) {
    if (!(s.spec() == spec)) throw UsageError("cover sets come from different grids");
    all = all | s;
  }
  if (all.size() != spec.cell_count()) throw UsageError("sets do not cover the grid");
  for (int i = 1; i <= spec.n; ++i) {
    if (auto chain = connects(cover[i - 1], i, adjacency_threshold(spec, i)))
      return {i, std::move(*chain)};
  }
  throw SoundnessError("no cover set spans its axis at its threshold");
}

LevelResult separating_level(const IntegerField& f, int axis) {
  validate_integer_field(f);
  if (axis < 1 || axis > f.spec.n) throw UsageError("axis out of range");
  long long lo = *std::min_element(f.values.begin(), f.values.end());
  long long hi = *std::max_element(f.values.begin(), f.values.end());

  auto level_set = [&](long long p) {
    CellSet s(f.spec);
    for (std::int64_t i = 0; i < f.spec.cell_count(); ++i)
      if (f.values[i] == p) s.insert(i);
    return s;
  };

  for (long long p = lo; p <= hi; ++p) {
    if (auto chain = connects(level_set(p), axis, 0)) {
      LevelResult r;
      r.connecting = true;
      r.level = p;
      r.chain = std::move(*chain);
      return r;
    }
  }
  for (long long p = lo; p <= hi; ++p) {
    if (auto cert = separates(level_set(p), axis)) {
      LevelResult r;
      r.connecting = false;
      r.level = p;
      r.certificate = std::move(*cert);
      return r;
    }
  }
  throw SoundnessError("no level connects and no level separates axis " + std::to_string(axis) +
                       "; " + dump_field(f));
}

VerifyMode parse_verify_mode(const std::string& name) {
  if (name == "plain") return VerifyMode::plain;
  if (name == "generalized") return VerifyMode::generalized;
  if (name == "lebesgue") return VerifyMode::lebesgue;
  if (name == "level") return VerifyMode::level;
  throw UsageError("unknown verify mode '" + name + "'");
}

std::string verify_mode_name(VerifyMode mode) {
  switch (mode) {
    case VerifyMode::plain: return "plain";
    case VerifyMode::generalized: return "generalized";
    case VerifyMode::lebesgue: return "lebesgue";
    case VerifyMode::level: return "level";
  }
  return "?";
}

std::int64_t enumeration_size(GridSpec spec, VerifyMode mode) {
  validate_spec(spec);
  std::int64_t cells = spec.cell_count();
  switch (mode) {
    case VerifyMode::plain:
    case VerifyMode::generalized: return checked_pow(spec.n, cells);
    case VerifyMode::lebesgue: return checked_pow((std::int64_t{1} << spec.n) - 1, cells);
    case VerifyMode::level: return checked_pow(kLevelModeValues, cells);
  }
  return 0;
}

namespace {

struct InstanceOutcome {
  bool counted = false;   // instance passed the mode's filter
  bool failed = false;
  int histogram_slot = -1;
  int chain_length = 0;
};

// Runs one enumerated/random instance of the mode. Soundness failures are
// demoted to counted failures so a verification sweep reports them instead
// of aborting.
InstanceOutcome run_instance(const GridSpec& spec, VerifyMode mode,
                             const std::vector<int>& digits) {
  InstanceOutcome out;
  std::int64_t cells = spec.cell_count();
  try {
    switch (mode) {
      case VerifyMode::plain:
      case VerifyMode::generalized: {
        Labeling lab{spec, {}};
        lab.colors.resize(cells);
        for (std::int64_t i = 0; i < cells; ++i) lab.colors[i] = digits[i] + 1;
        out.counted = true;
        WitnessResult w = steinhaus_witness(lab, mode == VerifyMode::generalized);
        verify_chain(w.chain, color_class(lab, w.axis));
        out.histogram_slot = w.axis - 1;
        out.chain_length = static_cast<int>(w.chain.cells.size());
        break;
      }
      case VerifyMode::lebesgue: {
        std::vector<CellSet> cover(spec.n, CellSet(spec));
        for (std::int64_t i = 0; i < cells; ++i) {
          int mask = digits[i] + 1;  // nonempty subset of [n]
          for (int a = 0; a < spec.n; ++a)
            if (mask & (1 << a)) cover[a].insert(i);
        }
        out.counted = true;
        WitnessResult w = lebesgue_witness(cover);
        verify_chain(w.chain, cover[w.axis - 1]);
        out.histogram_slot = w.axis - 1;
        out.chain_length = static_cast<int>(w.chain.cells.size());
        break;
      }
      case VerifyMode::level: {
        IntegerField f{spec, {}};
        f.values.assign(digits.begin(), digits.begin() + cells);
        try {
          validate_integer_field(f);
        } catch (const UsageError&) {
          return out;  // filtered: not adjacency-Lipschitz
        }
        out.counted = true;
        bool any_connecting = false;
        for (int axis = 1; axis <= spec.n; ++axis) {
          LevelResult r = separating_level(f, axis);
          CellSet level_set(spec);
          for (std::int64_t i = 0; i < cells; ++i)
            if (f.values[i] == r.level) level_set.insert(i);
          if (r.connecting) {
            verify_chain(*r.chain, level_set);
            any_connecting = true;
          } else {
            verify_certificate(*r.certificate, level_set);
          }
        }
        out.histogram_slot = any_connecting ? 0 : 1;
        break;
      }
    }
  } catch (const SoundnessError&) {
    out.counted = true;
    out.failed = true;
  }
  return out;
}

int digit_base(const GridSpec& spec, VerifyMode mode) {
  switch (mode) {
    case VerifyMode::plain:
    case VerifyMode::generalized: return spec.n;
    case VerifyMode::lebesgue: return (1 << spec.n) - 1;
    case VerifyMode::level: return kLevelModeValues;
  }
  return 1;
}

VerifyReport sweep(GridSpec spec, VerifyMode mode, bool exhaustive, std::int64_t count,
                   std::uint64_t seed, int jobs) {
  std::int64_t cells = spec.cell_count();
  int base = digit_base(spec, mode);
  int slots = mode == VerifyMode::level ? 2 : spec.n;

  struct Partial {
    std::int64_t total = 0, failures = 0;
    std::vector<std::int64_t> histogram;
    int max_chain = 0;
  };
  int jobcount = jobs <= 0 ? default_jobs() : jobs;
  std::vector<Partial> partials(std::max<std::int64_t>(1, std::min<std::int64_t>(jobcount, count)));
  for (auto& p : partials) p.histogram.assign(slots, 0);

  parallel_chunks(count, jobcount, [&](std::int64_t b, std::int64_t e, int chunk) {
    Partial& part = partials[chunk];
    std::vector<int> digits(cells);
    for (std::int64_t idx = b; idx < e; ++idx) {
      if (exhaustive) {
        std::int64_t v = idx;
        for (std::int64_t i = 0; i < cells; ++i) {
          digits[i] = static_cast<int>(v % base);
          v /= base;
        }
      } else {
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(idx)));
        if (mode == VerifyMode::level) {
          // Rounded affine functions of the cell center; the per-axis
          // coefficient budget keeps intersecting cells within one step.
          std::uniform_real_distribution<double> coeff(-1.0, 1.0);
          std::vector<double> a(spec.n);
          double budget = 0;
          for (int s = 0; s < spec.n; ++s) {
            a[s] = coeff(rng);
            budget += std::abs(a[s]);
          }
          double scale = budget > 0 ? spec.k / budget : 0.0;
          std::uniform_real_distribution<double> shift(-2.0, 2.0);
          double c0 = shift(rng);
          for (std::int64_t i = 0; i < cells; ++i) {
            Cell cc = cell_from_linear(spec, i);
            double h = c0;
            for (int s = 0; s < spec.n; ++s) h += a[s] * scale * ((cc[s] - 0.5) / spec.k);
            digits[i] = static_cast<int>(std::floor(h));
          }
        } else {
          std::uniform_int_distribution<int> digit(0, base - 1);
          for (std::int64_t i = 0; i < cells; ++i) digits[i] = digit(rng);
        }
      }
      InstanceOutcome o = run_instance(spec, mode, digits);
      if (!o.counted) continue;
      ++part.total;
      if (o.failed) ++part.failures;
      if (o.histogram_slot >= 0) ++part.histogram[o.histogram_slot];
      part.max_chain = std::max(part.max_chain, o.chain_length);
    }
  });

  VerifyReport rep;
  rep.mode = mode;
  rep.spec = spec;
  rep.exhaustive = exhaustive;
  rep.candidates = count;
  rep.histogram.assign(slots, 0);
  rep.seed = seed;
  rep.trials = exhaustive ? 0 : count;
  for (const Partial& p : partials) {
    rep.total += p.total;
    rep.failures += p.failures;
    for (int s = 0; s < slots; ++s) rep.histogram[s] += p.histogram[s];
    rep.max_chain_length = std::max(rep.max_chain_length, p.max_chain);
  }
  return rep;
}

}  // namespace

VerifyReport exhaustive_verify(GridSpec spec, VerifyMode mode, std::int64_t guard, int jobs) {
  validate_spec(spec);
  std::int64_t count = enumeration_size(spec, mode);
  if (count > guard)
    throw GuardError("enumeration of " + std::to_string(count) + " instances exceeds the guard of " +
                     std::to_string(guard) + "; use the randomized mode");
  return sweep(spec, mode, true, count, 0, jobs);
}

VerifyReport randomized_verify(GridSpec spec, VerifyMode mode, std::uint64_t seed,
                               std::int64_t trials, int jobs) {
  validate_spec(spec);
  if (trials <= 0) throw UsageError("trial count must be positive");
  return sweep(spec, mode, false, trials, seed, jobs);
}

}  // namespace cubetop

#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cubetop {

// Usage errors (bad arguments, malformed inputs). Mapped to a dedicated
// error code at the C boundary.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Enumeration or face-lattice size guard exceeded.
class GuardError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A theorem-guaranteed search failed. Must never happen; carries a full
// dump of the offending instance.
class SoundnessError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline int default_jobs() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Splits [0, total) into contiguous chunks and runs fn(begin, end, chunk_id)
// on worker threads. Results must be merged by the caller in chunk order so
// output stays independent of scheduling.
inline void parallel_chunks(std::int64_t total, int jobs,
                            const std::function<void(std::int64_t, std::int64_t, int)>& fn) {
  if (jobs <= 0) jobs = default_jobs();
  if (total <= 0) return;
  int chunks = static_cast<int>(std::min<std::int64_t>(jobs, total));
  if (chunks <= 1) {
    fn(0, total, 0);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(chunks);
  for (int c = 0; c < chunks; ++c) {
    std::int64_t b = total * c / chunks;
    std::int64_t e = total * (c + 1) / chunks;
    workers.emplace_back([&fn, b, e, c] { fn(b, e, c); });
  }
  for (auto& w : workers) w.join();
}

// FNV-1a, used for input digests in reports.
inline std::uint64_t fnv1a(const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t fnv1a(const std::string& s) { return fnv1a(s.data(), s.size()); }

// Per-trial generator seed; trials stay replayable regardless of how they
// are distributed over workers.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace cubetop

#pragma once

#include <cstdint>
#include <random>

namespace relay_rgg {

// SplitMix64 finalizer. Stable across platforms and runs; every derived
// stream and functional weight in the project goes through this mixer.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t hash_step(std::uint64_t h, std::uint64_t x) noexcept {
  return mix64(h ^ (x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

/// Stable hash of (seed, parts...). Used for weight keys and per-trial
/// stream derivation, so results are reproducible from the master seed.
template <class... Parts>
constexpr std::uint64_t stable_hash(std::uint64_t seed, Parts... parts) noexcept {
  std::uint64_t h = mix64(seed ^ 0x243f6a8885a308d3ULL);
  ((h = hash_step(h, static_cast<std::uint64_t>(parts))), ...);
  return h;
}

/// Seeded uniform stream. mt19937_64's output sequence is pinned by the
/// standard, and the double conversion below is explicit, so identical seeds
/// give bit-identical draws everywhere.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

  // uniform in [0, 1)
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  // uniform in (0, 1), never exactly 0 or 1
  double uniform_open() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  std::uint64_t next_u64() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

enum class StreamTag : std::uint64_t {
  points = 1,
  weights = 2,
  queries = 3,
};

/// Per-trial stream seed: trials never share draws, and a trial's stream does
/// not depend on scheduling or worker count.
inline std::uint64_t trial_stream_seed(std::uint64_t master_seed,
                                       std::uint64_t config_index,
                                       std::uint64_t trial_index, StreamTag tag) {
  return stable_hash(master_seed, (config_index << 32) | trial_index,
                     static_cast<std::uint64_t>(tag));
}

}  // namespace relay_rgg

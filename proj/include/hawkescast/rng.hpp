#pragma once

#include <cmath>
#include <cstdint>

namespace hawkescast {

/// SplitMix64 finalizer; also used as the seed-mixing function for deriving
/// independent per-item streams: child_seed = mix64(parent_seed ^ mix64(index)).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: output i of stream (seed) is mix64(seed + i*GOLDEN).
/// Seedable, splittable (via `split`), and trivially reproducible: the whole
/// stream is a pure function of (seed, counter).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() { return mix64(seed_ + (counter_++) * 0x9e3779b97f4a7c15ULL); }

  /// Independent child stream, deterministic in (seed, index).
  CounterRng split(std::uint64_t index) const { return CounterRng(mix64(seed_ ^ mix64(index))); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1].
  double uniform_pos() { return 1.0 - uniform(); }

  double exponential(double rate = 1.0) { return -std::log(uniform_pos()) / rate; }

  double normal() {
    // Box-Muller; one draw per call, second value discarded for determinism
    // of the call sequence.
    const double u1 = uniform_pos();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  double uniform_range(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace hawkescast

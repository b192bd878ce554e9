#pragma once

#include <cstdint>
#include <random>

namespace gvflab {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Stable trial seed derivation: trial k of a run with a given master seed
/// always receives the same seed, independent of execution order.
inline std::uint64_t derive_trial_seed(std::uint64_t master_seed, int trial) {
  return splitmix64(master_seed ^
                    (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(trial + 1)));
}

/// Deterministic RNG wrapper. Uniform doubles are produced from the raw
/// 64-bit stream so output does not depend on library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return eng_() % n; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gvflab

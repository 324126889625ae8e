#pragma once

#include <cstdint>
#include <limits>

namespace salemlab {

/**
 * SplitMix64 (Steele, Lea, Flood 2014) with 64-bit state.
 *
 *   state += 0x9E3779B97F4A7C15
 *   z = state
 *   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
 *   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
 *   return z ^ (z >> 31)
 *
 * Seed 1234567 yields 6457827717110365317, 3203168211198807973, ...
 * tests/fixtures/rng_vectors.json holds the full table used by the tests.
 */
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t next() {
    state_ += kGolden;
    return mix(state_);
  }

  /// Uniform integer in [0, bound) by rejection: draws below
  /// (2^64 − bound) mod bound are discarded, the rest reduced mod bound.
  constexpr std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  constexpr double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  constexpr result_type operator()() { return next(); }

 private:
  std::uint64_t state_;
};

/// Seed of the stream used by trial `trial` of a run with master seed `master`:
///   mix(master ^ mix(trial + 0x9E3779B97F4A7C15)).
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  return SplitMix64::mix(master ^ SplitMix64::mix(trial + SplitMix64::kGolden));
}

}  // namespace salemlab

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "salemlab/grid/measure.hpp"

namespace salemlab {

struct SampleConfig {
  TorusGrid grid;
  double beta = 0.5;            // sparsity exponent in (0, d]
  std::int64_t atom_count = 1;  // P, default ⌊N^β⌋
  std::uint64_t seed = 0;
  std::int64_t trial_count = 1;
  int h = 1;          // confidence exponent
  int max_order = 2;  // largest convolution order 𝔫

  // Validates gcd(𝔫!, N) = 1, N > 2𝔫, P >= 1, β in (0, d], T >= 1, h >= 1.
  // Throws ConfigurationError naming the failed condition.
  static SampleConfig make(TorusGrid grid, double beta, std::uint64_t seed,
                           std::int64_t trial_count, int h, int max_order,
                           std::optional<std::int64_t> atom_count = std::nullopt);

  void validate() const;
};

// An ordered draw of atoms; σ_k is the measure of the first k of them.
struct Sample {
  TorusGrid grid;
  std::vector<Index> atoms;
  std::int64_t trial = 0;
  std::uint64_t trial_seed = 0;

  std::int64_t m() const { return static_cast<std::int64_t>(atoms.size()); }
  AtomicMeasure sigma() const;
  AtomicMeasure prefix(std::int64_t k) const;

  // Atoms of σ listed in lattice order (any order is a valid draw sequence).
  static Sample from_measure(const AtomicMeasure& sigma);
};

// P atoms i.i.d. uniform on Γ_N^d (collisions allowed). Each atom draws its
// coordinates axis 0 first with SplitMix64::below(N), from the stream seeded
// by trial_seed(config.seed, trial).
Sample sample_points(const SampleConfig& config, std::int64_t trial);

// ⌊N^β⌋ computed without round-off at exact powers.
std::int64_t floor_power(Index N, double beta);

// True iff gcd(n!, N) = 1, i.e. N has no prime factor <= n.
bool factorial_coprime(Index N, int n);
bool is_prime(Index n);

}  // namespace salemlab

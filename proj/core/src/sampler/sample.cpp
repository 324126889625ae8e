#include "salemlab/sampler/sample.hpp"

#include <cmath>
#include <string>

#include "salemlab/errors.hpp"
#include "salemlab/sampler/rng.hpp"

namespace salemlab {

std::int64_t floor_power(Index N, double beta) {
  const double x = std::pow(static_cast<double>(N), beta);
  return static_cast<std::int64_t>(std::floor(x * (1.0 + 1e-12)));
}

bool factorial_coprime(Index N, int n) {
  for (Index p = 2; p <= n; ++p)
    if (N % p == 0) return false;
  return true;
}

bool is_prime(Index n) {
  if (n < 2) return false;
  for (Index p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

SampleConfig SampleConfig::make(TorusGrid grid, double beta, std::uint64_t seed,
                                std::int64_t trial_count, int h, int max_order,
                                std::optional<std::int64_t> atom_count) {
  SampleConfig c{grid};
  c.beta = beta;
  c.seed = seed;
  c.trial_count = trial_count;
  c.h = h;
  c.max_order = max_order;
  c.atom_count = atom_count ? *atom_count : floor_power(grid.N(), beta);
  c.validate();
  return c;
}

void SampleConfig::validate() const {
  const Index N = grid.N();
  if (!(beta > 0.0) || beta > grid.d())
    throw ConfigurationError("beta must lie in (0, d]");
  if (atom_count < 1) throw ConfigurationError("atom count P must be >= 1");
  if (trial_count < 1) throw ConfigurationError("trial count must be >= 1");
  if (h < 1) throw ConfigurationError("confidence exponent h must be >= 1");
  if (max_order < 1) throw ConfigurationError("maximal convolution order must be >= 1");
  if (N <= 2 * static_cast<Index>(max_order))
    throw ConfigurationError("N = " + std::to_string(N) + " must exceed 2*max_order = " +
                             std::to_string(2 * max_order));
  if (!factorial_coprime(N, max_order))
    throw ConfigurationError("gcd(" + std::to_string(max_order) + "!, " + std::to_string(N) +
                             ") != 1; choose N without prime factors <= max_order");
}

AtomicMeasure Sample::sigma() const { return AtomicMeasure::from_atoms(grid, atoms); }

AtomicMeasure Sample::prefix(std::int64_t k) const {
  if (k < 0 || k > m()) throw DomainError("prefix length outside [0, m]");
  return AtomicMeasure::from_atoms(grid, std::span<const Index>(atoms.data(), static_cast<std::size_t>(k)));
}

Sample Sample::from_measure(const AtomicMeasure& sigma) {
  if (sigma.denominator() != 1) throw DomainError("sample measures must have integer counts");
  Sample s{sigma.grid(), {}};
  for (Index u : sigma.support())
    for (std::int64_t c = 0; c < sigma.count(u); ++c) s.atoms.push_back(u);
  return s;
}

Sample sample_points(const SampleConfig& config, std::int64_t trial) {
  const std::uint64_t seed = trial_seed(config.seed, static_cast<std::uint64_t>(trial));
  SplitMix64 gen(seed);
  const TorusGrid& grid = config.grid;
  const auto N = static_cast<std::uint64_t>(grid.N());
  Sample s{grid, {}};
  s.trial = trial;
  s.trial_seed = seed;
  s.atoms.reserve(static_cast<std::size_t>(config.atom_count));
  for (std::int64_t j = 0; j < config.atom_count; ++j) {
    Index idx = 0;
    for (int k = 0; k < grid.d(); ++k) idx = idx * grid.N() + static_cast<Index>(gen.below(N));
    s.atoms.push_back(idx);
  }
  return s;
}

}  // namespace salemlab

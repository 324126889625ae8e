#pragma once

#include <cstdint>
#include <vector>

#include "salemlab/grid/measure.hpp"

namespace salemlab {

// Exact count of μ in a half-open cyclic cube (mass = count/denominator).
std::int64_t cube_count(const AtomicMeasure& mu, const Cube& q);
double cube_mass(const AtomicMeasure& mu, const Cube& q);

// Count in the cube of side s at every corner, indexed like the grid.
std::vector<std::int64_t> cube_count_table(const AtomicMeasure& mu, Index side);

struct CubeMax {
  std::int64_t count = 0;
  double mass = 0.0;
  Cube witness;  // first maximizing corner in row-major order
};

CubeMax max_cube_mass(const AtomicMeasure& mu, Index side);

// Largest admissible lattice side for cubes of Lebesgue measure at most
// `bound`: max{1, ⌊N·bound^{1/d}⌋}, capped at N. `degenerate` is set when
// bound < N^{−d}, i.e. only single cells qualify by convention.
Index admissible_side(Index N, int d, double bound, bool* degenerate = nullptr);

}  // namespace salemlab

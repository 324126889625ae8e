#include "salemlab/grid/cubes.hpp"

#include <cmath>

#include "salemlab/errors.hpp"
#include "salemlab/grid/window_sum.hpp"

namespace salemlab {

std::int64_t cube_count(const AtomicMeasure& mu, const Cube& q) {
  const int d = mu.d();
  const Index N = mu.N();
  if (static_cast<int>(q.corner.size()) != d) throw DomainError("cube corner arity mismatch");
  if (q.side < 1 || q.side > N) throw DomainError("cube side must lie in [1, N]");
  std::vector<Index> u(static_cast<std::size_t>(d));
  std::int64_t total = 0;
  for (Index idx : mu.support()) {
    mu.grid().coords(idx, u);
    bool inside = true;
    for (int k = 0; k < d && inside; ++k) inside = wrap(u[k] - q.corner[k], N) < q.side;
    if (inside) total += mu.count(idx);
  }
  return total;
}

double cube_mass(const AtomicMeasure& mu, const Cube& q) {
  return static_cast<double>(cube_count(mu, q)) / static_cast<double>(mu.denominator());
}

std::vector<std::int64_t> cube_count_table(const AtomicMeasure& mu, Index side) {
  const std::vector<Index> sides(static_cast<std::size_t>(mu.d()), side);
  return cyclic_box_sums<std::int64_t, std::int64_t>(mu.counts(), mu.d(), mu.N(), sides);
}

CubeMax max_cube_mass(const AtomicMeasure& mu, Index side) {
  const std::vector<std::int64_t> table = cube_count_table(mu, side);
  std::size_t best = 0;
  for (std::size_t i = 1; i < table.size(); ++i)
    if (table[i] > table[best]) best = i;
  CubeMax out;
  out.count = table[best];
  out.mass = static_cast<double>(out.count) / static_cast<double>(mu.denominator());
  out.witness.corner = mu.grid().coords(static_cast<Index>(best));
  out.witness.side = side;
  return out;
}

Index admissible_side(Index N, int d, double bound, bool* degenerate) {
  if (!(bound > 0.0)) throw DomainError("cube measure bound must be positive");
  // Relative slack absorbs round-off when N·bound^{1/d} is an exact integer.
  const double raw = static_cast<double>(N) * std::pow(bound, 1.0 / d) * (1.0 + 1e-12);
  const double fl = std::floor(raw);
  if (degenerate != nullptr) *degenerate = fl < 1.0;
  if (fl < 1.0) return 1;
  if (fl >= static_cast<double>(N)) return N;
  return static_cast<Index>(fl);
}

}  // namespace salemlab

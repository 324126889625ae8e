#pragma once

#include <vector>

#include "salemlab/grid/measure.hpp"

namespace salemlab {

// Δ_{j,ℓ} = σ_j^{*ℓ} − σ_{j−1}^{*ℓ} where σ_j = σ_{j−1} + δ_x. Computed as
// δ_{ℓx} + Σ_{k=1}^{ℓ−1} C(ℓ,k) δ_{(ℓ−k)x} * σ_{j−1}^{*k} and checked against
// the direct difference; a nonzero residual or a negative entry raises
// ConsistencyError.
AtomicMeasure conv_increment(const AtomicMeasure& sigma_j, const AtomicMeasure& sigma_prev, int ell,
                             Index x);

// Shift of an integer-count measure by a lattice point: (δ_x * a).
AtomicMeasure translate(const AtomicMeasure& a, Index x);

// Maintains σ_j^{*k} for k = 0..ℓ while atoms are appended one at a time,
// using the binomial increment (O(ℓ² N^d) per atom, exact integers).
class PowerLadder {
 public:
  PowerLadder(TorusGrid grid, int max_order);

  void push(Index x);
  std::int64_t atoms() const { return atoms_; }
  // σ_j^{*k}, 0 <= k <= max_order.
  const AtomicMeasure& power(int k) const { return powers_[static_cast<std::size_t>(k)]; }

 private:
  TorusGrid grid_;
  int max_order_;
  std::int64_t atoms_ = 0;
  std::vector<AtomicMeasure> powers_;
};

}  // namespace salemlab

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace salemlab {

using Index = std::int64_t;

// Process-wide ceiling on the number of cells any dense array may hold.
// Default is 2^27 cells (1 GiB of doubles).
Index cell_budget();
void set_cell_budget(Index cells);

// side^d, throwing CapacityError when it exceeds the budget.
Index checked_cell_count(int d, Index side);

// The lattice Γ_N^d = {k/N}^d, stored row-major with axis 0 slowest.
class TorusGrid {
 public:
  TorusGrid(int d, Index N);

  int d() const { return d_; }
  Index N() const { return N_; }
  Index cell_count() const { return cells_; }

  // Coordinates are reduced mod N, so negative inputs are fine.
  Index index(std::span<const Index> coords) const;
  void coords(Index index, std::span<Index> out) const;
  std::vector<Index> coords(Index index) const;

  Index add(Index a, Index b) const;
  Index negate(Index a) const;
  Index scale(Index a, Index k) const;

  bool operator==(const TorusGrid&) const = default;

 private:
  int d_;
  Index N_;
  Index cells_;
};

inline Index wrap(Index x, Index n) {
  Index r = x % n;
  return r < 0 ? r + n : r;
}

// Cyclic distance between residues a and b in Z_n.
inline Index cyclic_gap(Index a, Index b, Index n) {
  Index g = wrap(a - b, n);
  return g <= n - g ? g : n - g;
}

// Centered representative of a residue: −⌊n/2⌋ … ⌈n/2⌉−1.
inline Index centered(Index k, Index n) {
  Index r = wrap(k, n);
  return r >= n - n / 2 ? r - n : r;
}

// Row-major helpers for a cube {0..R-1}^d.
Index flat_index(std::span<const Index> coords, Index R);
void unflatten(Index index, Index R, std::span<Index> out);

}  // namespace salemlab

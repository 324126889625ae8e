#pragma once

#include <span>
#include <vector>

#include "salemlab/errors.hpp"
#include "salemlab/grid/torus.hpp"

namespace salemlab {

// Sums of `values` over every cyclic box [c, c + sides) of {0..n-1}^d,
// indexed by the corner c. One prefix-sum pass per axis, O(d·n^d) total.
// Acc is the accumulator type (an integer type for exact counts, long
// double for real data).
template <class T, class Acc = T>
std::vector<T> cyclic_box_sums(std::span<const T> values, int d, Index n,
                               std::span<const Index> sides) {
  if (static_cast<int>(sides.size()) != d) throw DomainError("box sides arity mismatch");
  for (Index s : sides)
    if (s < 1 || s > n) throw DomainError("box side must lie in [1, n]");
  std::vector<T> cur(values.begin(), values.end());
  std::vector<T> next(cur.size());
  std::vector<Acc> prefix(static_cast<std::size_t>(2 * n + 1));
  Index stride = 1;
  for (int axis = d - 1; axis >= 0; --axis) {
    const Index s = sides[static_cast<std::size_t>(axis)];
    const Index block = stride * n;
    const Index total = static_cast<Index>(cur.size());
    for (Index outer = 0; outer < total; outer += block) {
      for (Index inner = 0; inner < stride; ++inner) {
        const Index base = outer + inner;
        prefix[0] = Acc{};
        for (Index t = 0; t < 2 * n; ++t) {
          const Index src = base + (t % n) * stride;
          prefix[static_cast<std::size_t>(t + 1)] =
              prefix[static_cast<std::size_t>(t)] + static_cast<Acc>(cur[static_cast<std::size_t>(src)]);
        }
        for (Index t = 0; t < n; ++t) {
          next[static_cast<std::size_t>(base + t * stride)] = static_cast<T>(
              prefix[static_cast<std::size_t>(t + s)] - prefix[static_cast<std::size_t>(t)]);
        }
      }
    }
    cur.swap(next);
    stride *= n;
  }
  return cur;
}

}  // namespace salemlab

#include "salemlab/grid/torus.hpp"

#include <atomic>
#include <limits>
#include <string>

#include "salemlab/errors.hpp"

namespace salemlab {

namespace {
std::atomic<Index> g_cell_budget{Index{1} << 27};
}

Index cell_budget() { return g_cell_budget.load(std::memory_order_relaxed); }

void set_cell_budget(Index cells) {
  if (cells < 1) throw DomainError("cell budget must be positive");
  g_cell_budget.store(cells, std::memory_order_relaxed);
}

Index checked_cell_count(int d, Index side) {
  if (d < 1) throw DomainError("dimension must be at least 1");
  if (side < 1) throw DomainError("side length must be positive");
  const Index budget = cell_budget();
  Index cells = 1;
  for (int k = 0; k < d; ++k) {
    if (cells > budget / side) {
      throw CapacityError("grid of side " + std::to_string(side) + " in dimension " +
                          std::to_string(d) + " exceeds the cell budget of " +
                          std::to_string(budget));
    }
    cells *= side;
  }
  return cells;
}

TorusGrid::TorusGrid(int d, Index N) : d_(d), N_(N) {
  if (d < 1) throw DomainError("torus dimension must be >= 1");
  if (N < 2) throw DomainError("torus side N must be >= 2");
  cells_ = checked_cell_count(d, N);
}

Index TorusGrid::index(std::span<const Index> coords) const {
  if (static_cast<int>(coords.size()) != d_) throw DomainError("coordinate arity mismatch");
  Index idx = 0;
  for (Index c : coords) idx = idx * N_ + wrap(c, N_);
  return idx;
}

void TorusGrid::coords(Index index, std::span<Index> out) const { unflatten(index, N_, out); }

std::vector<Index> TorusGrid::coords(Index index) const {
  std::vector<Index> out(static_cast<std::size_t>(d_));
  unflatten(index, N_, out);
  return out;
}

Index TorusGrid::add(Index a, Index b) const {
  if (d_ == 1) return wrap(a + b, N_);
  Index out = 0;
  Index stride = 1;
  for (int k = 0; k < d_; ++k) {
    const Index ca = a % N_, cb = b % N_;
    out += wrap(ca + cb, N_) * stride;
    a /= N_;
    b /= N_;
    stride *= N_;
  }
  return out;
}

Index TorusGrid::negate(Index a) const {
  Index out = 0;
  Index stride = 1;
  for (int k = 0; k < d_; ++k) {
    out += wrap(-(a % N_), N_) * stride;
    a /= N_;
    stride *= N_;
  }
  return out;
}

Index TorusGrid::scale(Index a, Index k) const {
  Index out = 0;
  Index stride = 1;
  const Index kk = wrap(k, N_);
  for (int ax = 0; ax < d_; ++ax) {
    const __int128 c = static_cast<__int128>(a % N_) * kk;
    out += static_cast<Index>(c % N_) * stride;
    a /= N_;
    stride *= N_;
  }
  return out;
}

Index flat_index(std::span<const Index> coords, Index R) {
  Index idx = 0;
  for (Index c : coords) idx = idx * R + wrap(c, R);
  return idx;
}

void unflatten(Index index, Index R, std::span<Index> out) {
  for (std::size_t k = out.size(); k-- > 0;) {
    out[k] = index % R;
    index /= R;
  }
}

}  // namespace salemlab

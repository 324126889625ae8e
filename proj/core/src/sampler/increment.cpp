#include "salemlab/sampler/increment.hpp"

#include <string>

#include "salemlab/errors.hpp"
#include "salemlab/grid/convolution.hpp"
#include "salemlab/sampler/constants.hpp"

namespace salemlab {

AtomicMeasure translate(const AtomicMeasure& a, Index x) {
  const TorusGrid& g = a.grid();
  std::vector<std::int64_t> out(static_cast<std::size_t>(g.cell_count()), 0);
  for (Index u = 0; u < g.cell_count(); ++u) {
    const std::int64_t c = a.count(u);
    if (c != 0) out[static_cast<std::size_t>(g.add(u, x))] = c;
  }
  return AtomicMeasure(g, std::move(out), a.denominator());
}

namespace {

// Accumulates C(ℓ,k) δ_{(ℓ−k)x} * σ^{*k} into `acc` for k = 0..ℓ−1.
void add_binomial_terms(std::vector<std::int64_t>& acc, const TorusGrid& g,
                        const std::vector<const AtomicMeasure*>& powers, int ell, Index x) {
  for (int k = 0; k < ell; ++k) {
    const AtomicMeasure& p = *powers[static_cast<std::size_t>(k)];
    const auto coef = static_cast<std::int64_t>(binomial(ell, k));
    const Index shift = g.scale(x, ell - k);
    for (Index u = 0; u < g.cell_count(); ++u) {
      const std::int64_t c = p.count(u);
      if (c != 0) acc[static_cast<std::size_t>(g.add(u, shift))] += coef * c;
    }
  }
}

}  // namespace

AtomicMeasure conv_increment(const AtomicMeasure& sigma_j, const AtomicMeasure& sigma_prev, int ell,
                             Index x) {
  if (ell < 1) throw DomainError("increment order must be >= 1");
  const TorusGrid& g = sigma_j.grid();
  if (!(g == sigma_prev.grid())) throw DomainError("measures live on different grids");
  if (!(sigma_j == AtomicMeasure(g, [&] {
          std::vector<std::int64_t> c(sigma_prev.counts().begin(), sigma_prev.counts().end());
          c[static_cast<std::size_t>(x)] += 1;
          return c;
        }())))
    throw DomainError("sigma_j must equal sigma_prev + delta_x");

  std::vector<AtomicMeasure> lower;
  lower.reserve(static_cast<std::size_t>(ell));
  lower.push_back(AtomicMeasure::delta(g));
  for (int k = 1; k < ell; ++k) lower.push_back(convolve(lower.back(), sigma_prev));
  std::vector<const AtomicMeasure*> ptrs;
  for (const auto& m : lower) ptrs.push_back(&m);

  std::vector<std::int64_t> inc(static_cast<std::size_t>(g.cell_count()), 0);
  add_binomial_terms(inc, g, ptrs, ell, x);

  const AtomicMeasure hi = conv_power(sigma_j, ell);
  const AtomicMeasure lo = convolve(lower.back(), sigma_prev);
  for (Index u = 0; u < g.cell_count(); ++u) {
    const std::int64_t direct = hi.count(u) - lo.count(u);
    const std::int64_t binom = inc[static_cast<std::size_t>(u)];
    if (binom < 0 || direct != binom)
      throw ConsistencyError("binomial increment mismatch at cell " + std::to_string(u) + ": " +
                             std::to_string(binom) + " vs " + std::to_string(direct));
  }
  return AtomicMeasure(g, std::move(inc));
}

PowerLadder::PowerLadder(TorusGrid grid, int max_order) : grid_(grid), max_order_(max_order) {
  if (max_order < 0) throw DomainError("ladder order must be >= 0");
  powers_.push_back(AtomicMeasure::delta(grid_));
  for (int k = 1; k <= max_order_; ++k) powers_.emplace_back(grid_);
}

void PowerLadder::push(Index x) {
  std::vector<const AtomicMeasure*> ptrs;
  for (const auto& p : powers_) ptrs.push_back(&p);
  std::vector<AtomicMeasure> next;
  next.reserve(powers_.size());
  next.push_back(powers_[0]);
  for (int k = 1; k <= max_order_; ++k) {
    std::vector<std::int64_t> c(powers_[static_cast<std::size_t>(k)].counts().begin(),
                                powers_[static_cast<std::size_t>(k)].counts().end());
    add_binomial_terms(c, grid_, ptrs, k, x);
    next.emplace_back(grid_, std::move(c));
  }
  powers_ = std::move(next);
  ++atoms_;
}

}  // namespace salemlab

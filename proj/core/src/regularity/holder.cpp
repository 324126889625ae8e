#include "salemlab/regularity/holder.hpp"

#include <algorithm>
#include <cmath>

#include "salemlab/errors.hpp"
#include "salemlab/parallel.hpp"

namespace salemlab {

GridFunction finite_difference(const GridFunction& f, int axis) {
  const int d = f.d();
  const Index R = f.R();
  if (axis < 0 || axis >= d) throw DomainError("axis out of range");
  if (R < 5) throw DomainError("finite differences need R >= 5");
  Index stride = 1;
  for (int a = d - 1; a > axis; --a) stride *= R;
  GridFunction out(d, R);
  auto v = f.values();
  auto o = out.values_mut();
  const double scale = static_cast<double>(R) / 12.0;
  for (Index i = 0; i < f.size(); ++i) {
    const Index coord = (i / stride) % R;
    auto at = [&](Index shift) {
      const Index c = wrap(coord + shift, R);
      return v[static_cast<std::size_t>(i + (c - coord) * stride)];
    };
    o[static_cast<std::size_t>(i)] = scale * (at(-2) - 8.0 * at(-1) + 8.0 * at(1) - at(2));
  }
  return out;
}

GridFunction shifted(const GridFunction& f, double c) {
  GridFunction out = f;
  for (double& x : out.values_mut()) x -= c;
  return out;
}

namespace {

std::vector<std::vector<Index>> sample_offsets(int d, Index R, OffsetSampling sampling) {
  std::vector<std::vector<Index>> out;
  if (sampling == OffsetSampling::exhaustive) {
    const Index total = checked_cell_count(d, R);
    std::vector<Index> c(static_cast<std::size_t>(d));
    for (Index i = 1; i < total; ++i) {
      unflatten(i, R, c);
      out.push_back(c);
    }
    return out;
  }
  for (Index len = 1; len <= R / 2; len *= 2) {
    for (int a = 0; a < d; ++a) {
      std::vector<Index> c(static_cast<std::size_t>(d), 0);
      c[static_cast<std::size_t>(a)] = len;
      out.push_back(c);
    }
    if (d > 1) out.emplace_back(static_cast<std::size_t>(d), len);
  }
  return out;
}

}  // namespace

double holder_seminorm(const GridFunction& f, double exponent, const ModulusPsi& psi,
                       OffsetSampling sampling, Index* offsets_sampled) {
  if (!(exponent > 0.0) || exponent > 1.0) throw DomainError("Hölder exponent must lie in (0, 1]");
  const int d = f.d();
  const Index R = f.R();
  const auto offsets = sample_offsets(d, R, sampling);
  if (offsets_sampled) *offsets_sampled = static_cast<Index>(offsets.size());
  std::vector<double> best(offsets.size(), 0.0);
  auto v = f.values();
  parallel_for(static_cast<std::int64_t>(offsets.size()), [&](std::int64_t k) {
    const auto& h = offsets[static_cast<std::size_t>(k)];
    double len2 = 0.0;
    for (Index c : h) {
      const double g = static_cast<double>(cyclic_gap(c, 0, R)) / static_cast<double>(R);
      len2 += g * g;
    }
    const double len = std::sqrt(len2);
    const double denom = std::pow(len, exponent) * psi(len);
    std::vector<Index> x(static_cast<std::size_t>(d)), y(static_cast<std::size_t>(d));
    double worst = 0.0;
    for (Index i = 0; i < f.size(); ++i) {
      unflatten(i, R, x);
      for (int a = 0; a < d; ++a)
        y[static_cast<std::size_t>(a)] = wrap(x[static_cast<std::size_t>(a)] + h[static_cast<std::size_t>(a)], R);
      const double diff = std::abs(v[static_cast<std::size_t>(flat_index(y, R))] - v[static_cast<std::size_t>(i)]);
      worst = std::max(worst, diff);
    }
    best[static_cast<std::size_t>(k)] = worst / denom;
  });
  return best.empty() ? 0.0 : *std::max_element(best.begin(), best.end());
}

HolderEstimate holder_norm(const GridFunction& f, double rho, const ModulusPsi& psi, OffsetSampling sampling) {
  if (!(rho >= 0.0)) throw DomainError("rho must be >= 0");
  HolderEstimate est;
  est.derivative_order = static_cast<int>(std::floor(rho + 1e-12));
  est.fractional = std::max(0.0, rho - est.derivative_order);
  if (est.fractional < 1e-12) est.fractional = 0.0;
  est.sampling = sampling == OffsetSampling::dyadic ? "dyadic" : "exhaustive";
  const int d = f.d();

  auto sup = [](const GridFunction& g) {
    double s = 0.0;
    for (double x : g.values()) s = std::max(s, std::abs(x));
    return s;
  };
  // Derivatives of order j from those of order j−1, indexed by
  // nondecreasing axis sequences.
  std::vector<std::pair<int, GridFunction>> level{{0, f}};
  est.sup_norm = sup(f);
  for (int j = 1; j <= est.derivative_order; ++j) {
    std::vector<std::pair<int, GridFunction>> next;
    for (const auto& [last, g] : level)
      for (int a = last; a < d; ++a) next.emplace_back(a, finite_difference(g, a));
    level = std::move(next);
    for (const auto& [a, g] : level) est.sup_norm = std::max(est.sup_norm, sup(g));
  }
  if (est.fractional > 0.0) {
    for (const auto& [a, g] : level) {
      Index n = 0;
      est.omega = std::max(est.omega, holder_seminorm(g, est.fractional, psi, sampling, &n));
      est.offsets_sampled = n;
    }
  }
  est.norm = est.sup_norm + est.omega;
  return est;
}

}  // namespace salemlab

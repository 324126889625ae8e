#include "salemlab/regularity/spectral.hpp"

#include <cmath>

#include "salemlab/errors.hpp"
#include "salemlab/grid/convolution.hpp"
#include "salemlab/grid/dft.hpp"

namespace salemlab {

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("slope fit needs two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::log(x[i]), b = std::log(y[i]);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

EnergyResult energy_spectral(const AtomicMeasure& mu, double gamma) {
  const int d = mu.d();
  if (!(gamma > 0.0) || !(gamma < d)) throw DomainError("gamma must lie in (0, d)");
  const Spectrum sp = dft(mu);
  EnergyResult out;
  out.gamma = gamma;
  const Index N = mu.N();
  for (Index k = 1; k < sp.size(); ++k) {
    const double r = sp.frequency_norm(k);
    const double term = std::norm(sp[k]) * std::pow(r, gamma - d);
    out.energy += term;
    const auto j = static_cast<std::size_t>(std::floor(std::log2(r) + 1e-12));
    if (out.shell_sums.size() <= j) out.shell_sums.resize(j + 1, 0.0);
    out.shell_sums[j] += term;
  }
  // Shell j is complete when every |r| < 2^{j+1} is representable on each axis.
  while (std::ldexp(1.0, out.complete_shells + 1) <= static_cast<double>(N / 2) + 1e-9) ++out.complete_shells;
  std::vector<double> xs, ys;
  for (int j = 0; j < out.complete_shells && j < static_cast<int>(out.shell_sums.size()); ++j)
    if (out.shell_sums[static_cast<std::size_t>(j)] > 0.0) {
      xs.push_back(std::ldexp(1.0, j));
      ys.push_back(out.shell_sums[static_cast<std::size_t>(j)]);
    }
  if (xs.size() >= 2) {
    out.shell_slope = log_log_slope(xs, ys);  // S_j ~ 2^{j·slope}
    out.diverging_trend = out.shell_slope > 0.0;
  }
  return out;
}

EnergyTrend energy_trend(const std::vector<AtomicMeasure>& family, double gamma) {
  EnergyTrend t;
  std::vector<double> xs;
  for (const auto& mu : family) {
    t.N.push_back(mu.N());
    t.energy.push_back(energy_spectral(mu, gamma).energy);
    xs.push_back(static_cast<double>(mu.N()));
  }
  t.exponent = log_log_slope(xs, t.energy);
  return t;
}

std::vector<Block> b_rho_blocks(const AtomicMeasure& mu, double alpha, const std::vector<double>& rhos) {
  const int d = mu.d();
  if (!(alpha > 0.0) || !(alpha <= d)) throw DomainError("alpha must lie in (0, d]");
  const Spectrum sp = dft(mu);
  const double q = 2.0 * d / alpha;
  std::vector<Block> out;
  for (double rho : rhos) {
    if (!(rho > 0.0) || rho > static_cast<double>(mu.N()) / 4.0)
      throw DomainError("block radius must lie in (0, N/4]");
    Block b;
    b.rho = rho;
    double acc = 0.0;
    for (Index k = 0; k < sp.size(); ++k) {
      const double r = sp.frequency_norm(k);
      if (r >= rho && r <= 2.0 * rho) {
        acc += std::pow(std::abs(sp[k]), q);
        ++b.frequencies;
      }
    }
    b.value = std::pow(acc, 1.0 / q);
    out.push_back(b);
  }
  return out;
}

std::vector<BallMass> ball_mass_profile(const AtomicMeasure& mu, const std::vector<double>& radii) {
  const int d = mu.d();
  const Index N = mu.N();
  const TorusGrid fine(d, 2 * N);
  std::vector<std::int64_t> lifted(static_cast<std::size_t>(fine.cell_count()), 0);
  std::vector<Index> c(static_cast<std::size_t>(d));
  for (Index u = 0; u < mu.grid().cell_count(); ++u) {
    if (mu.count(u) == 0) continue;
    unflatten(u, N, c);
    for (Index& x : c) x *= 2;
    lifted[static_cast<std::size_t>(flat_index(c, 2 * N))] = mu.count(u);
  }
  const AtomicMeasure on_fine(fine, std::move(lifted));
  std::vector<BallMass> out;
  for (double r : radii) {
    if (!(r > 0.0) || r > 0.5 + 1e-12) throw DomainError("ball radius must lie in (0, 1/2]");
    const auto J = static_cast<Index>(std::floor(2.0 * static_cast<double>(N) * r + 1e-9));
    // Closed ball of radius J half-cells around the origin, as a set of cells.
    std::vector<std::int64_t> ball(static_cast<std::size_t>(fine.cell_count()), 0);
    for (Index v = 0; v < fine.cell_count(); ++v) {
      unflatten(v, 2 * N, c);
      Index s = 0;
      for (Index x : c) {
        const Index g = cyclic_gap(x, 0, 2 * N);
        s += g * g;
      }
      if (s <= J * J) ball[static_cast<std::size_t>(v)] = 1;
    }
    const AtomicMeasure sums = convolve(on_fine, AtomicMeasure(fine, std::move(ball)));
    out.push_back({r, static_cast<double>(J) / (2.0 * static_cast<double>(N)),
                   static_cast<double>(sums.max_count()) / static_cast<double>(mu.denominator())});
  }
  return out;
}

}  // namespace salemlab

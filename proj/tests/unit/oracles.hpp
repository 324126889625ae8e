#pragma once

// Independent brute-force references used by the unit tests. Everything here
// is written from the definitions, without touching library internals.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

using cd = std::complex<double>;

inline std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

// Σ_u m(u) e^{−2πi r u/N}, d = 1.
inline cd dft1(const std::vector<double>& m, std::int64_t r) {
  const std::int64_t N = static_cast<std::int64_t>(m.size());
  cd acc = 0.0;
  for (std::int64_t u = 0; u < N; ++u) {
    const double th = -2.0 * std::numbers::pi * static_cast<double>(mod(r * u, N)) / N;
    acc += m[u] * cd(std::cos(th), std::sin(th));
  }
  return acc;
}

// Cyclic convolution of integer counts on Z_N, d = 1.
inline std::vector<std::int64_t> conv1(const std::vector<std::int64_t>& a,
                                       const std::vector<std::int64_t>& b) {
  const std::size_t N = a.size();
  std::vector<std::int64_t> out(N, 0);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out[(i + j) % N] += a[i] * b[j];
  return out;
}

// Count of a cyclic cube with corner (c0, c1) and side s, d = 2 (row-major N×N).
inline std::int64_t cube2(const std::vector<std::int64_t>& m, std::int64_t N, std::int64_t c0,
                          std::int64_t c1, std::int64_t s) {
  std::int64_t tot = 0;
  for (std::int64_t a = 0; a < s; ++a)
    for (std::int64_t b = 0; b < s; ++b) tot += m[mod(c0 + a, N) * N + mod(c1 + b, N)];
  return tot;
}

inline std::int64_t cube1(const std::vector<std::int64_t>& m, std::int64_t c, std::int64_t s) {
  const std::int64_t N = static_cast<std::int64_t>(m.size());
  std::int64_t tot = 0;
  for (std::int64_t a = 0; a < s; ++a) tot += m[mod(c + a, N)];
  return tot;
}

inline double cyc(double a, double b) {
  double g = std::fmod(std::fabs(a - b), 1.0);
  return std::min(g, 1.0 - g);
}

// Two-sided sum of one-sided sup-inf distances, points as vectors of coords.
inline double hausdorff(const std::vector<std::vector<double>>& A,
                        const std::vector<std::vector<double>>& B) {
  auto dist = [](const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += cyc(x[k], y[k]) * cyc(x[k], y[k]);
    return std::sqrt(s);
  };
  auto excess = [&](const auto& P, const auto& Q) {
    double w = 0.0;
    for (const auto& p : P) {
      double best = 1e300;
      for (const auto& q : Q) best = std::min(best, dist(p, q));
      w = std::max(w, best);
    }
    return w;
  };
  return excess(A, B) + excess(B, A);
}

}  // namespace oracle

namespace oracle {

// ω_{s,ψ} over every pair of grid points on 𝕋¹, O(R²).
template <class Psi>
inline double holder_pairs_1d(const std::vector<double>& f, double s, const Psi& psi) {
  const auto R = static_cast<std::int64_t>(f.size());
  double best = 0.0;
  for (std::int64_t i = 0; i < R; ++i)
    for (std::int64_t j = 0; j < R; ++j) {
      if (i == j) continue;
      std::int64_t g = std::abs(i - j);
      g = std::min(g, R - g);
      const double h = static_cast<double>(g) / static_cast<double>(R);
      best = std::max(best, std::abs(f[static_cast<std::size_t>(i)] - f[static_cast<std::size_t>(j)]) /
                                (std::pow(h, s) * psi(h)));
    }
  return best;
}

// sup over continuum centers of μ(B(x,r)) on 𝕋¹ for an atomic μ: the best
// closed interval of length 2r starts at an atom.
inline double ball_1d(const std::vector<double>& mass, double r) {
  const auto N = static_cast<std::int64_t>(mass.size());
  double best = 0.0;
  for (std::int64_t a = 0; a < N; ++a) {
    double s = 0.0;
    for (std::int64_t u = 0; u < N; ++u) {
      // offset of u from a going forward, in [0, 1)
      const double off = static_cast<double>(((u - a) % N + N) % N) / static_cast<double>(N);
      if (off <= 2 * r + 1e-12 || (2 * r >= 1.0 - 1e-12)) s += mass[static_cast<std::size_t>(u)];
    }
    best = std::max(best, s);
  }
  return best;
}

}  // namespace oracle

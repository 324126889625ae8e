#include "salemlab/grid/convolution.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "salemlab/errors.hpp"
#include "salemlab/grid/dft.hpp"
#include "salemlab/grid/fft.hpp"

namespace salemlab {

namespace {

// Above 2^52 a double can no longer certify an integer by rounding.
constexpr double kExactDoubleLimit = 4503599627370496.0;
// Largest pair count the exact sparse fallback will attempt.
constexpr double kDirectBudget = 1.7e10;

std::int64_t checked_mul(std::int64_t a, std::int64_t b, const char* what) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out))
    throw CapacityError(std::string(what) + " overflows 64-bit integers");
  return out;
}

std::int64_t checked_pow(std::int64_t base, int ell, const char* what) {
  std::int64_t out = 1;
  for (int i = 0; i < ell; ++i) out = checked_mul(out, base, what);
  return out;
}

std::vector<Complex> counts_spectrum(const AtomicMeasure& a) {
  std::vector<Complex> buf(a.counts().begin(), a.counts().end());
  fft_inplace(buf, a.d(), a.N(), FftSign::forward);
  return buf;
}

// Rounds an inverse transform (already divided by the cell count) to
// integers. Returns false when a residual reaches 0.25 or the total is off.
bool round_counts(const std::vector<Complex>& raw, std::int64_t expected_total,
                  std::vector<std::int64_t>& out, double& worst) {
  out.assign(raw.size(), 0);
  worst = 0.0;
  __int128 total = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double v = raw[i].real();
    const double r = std::nearbyint(v);
    worst = std::max(worst, std::max(std::abs(v - r), std::abs(raw[i].imag())));
    out[i] = static_cast<std::int64_t>(r);
    if (out[i] < 0) return false;
    total += out[i];
  }
  return worst < 0.25 && total == expected_total;
}

GridFunction normalized_inverse(std::vector<Complex>& buf, int d, Index R, double scale) {
  fft_inplace(buf, d, R, FftSign::inverse);
  std::vector<double> values(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) values[i] = buf[i].real() * scale;
  return GridFunction(d, R, std::move(values));
}

}  // namespace

AtomicMeasure convolve_direct(const AtomicMeasure& a, const AtomicMeasure& b) {
  if (!(a.grid() == b.grid())) throw DomainError("convolution operands live on different grids");
  const std::vector<Index> sa = a.support();
  const std::vector<Index> sb = b.support();
  if (static_cast<double>(sa.size()) * static_cast<double>(sb.size()) > kDirectBudget)
    throw PrecisionError("exact convolution fallback exceeds its work budget");
  const TorusGrid& grid = a.grid();
  std::vector<__int128> acc(static_cast<std::size_t>(grid.cell_count()), 0);
  for (Index u : sa) {
    const __int128 cu = a.count(u);
    for (Index v : sb) acc[static_cast<std::size_t>(grid.add(u, v))] += cu * b.count(v);
  }
  std::vector<std::int64_t> counts(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (acc[i] > std::numeric_limits<std::int64_t>::max())
      throw CapacityError("convolution count overflows 64-bit integers");
    counts[i] = static_cast<std::int64_t>(acc[i]);
  }
  return AtomicMeasure(grid, std::move(counts),
                       checked_mul(a.denominator(), b.denominator(), "denominator"));
}

AtomicMeasure convolve(const AtomicMeasure& a, const AtomicMeasure& b, ConvolutionStats* stats) {
  if (!(a.grid() == b.grid())) throw DomainError("convolution operands live on different grids");
  const std::int64_t den = checked_mul(a.denominator(), b.denominator(), "denominator");
  const std::int64_t total = checked_mul(a.total_count(), b.total_count(), "total count");
  if (static_cast<double>(total) < kExactDoubleLimit) {
    std::vector<Complex> fa = counts_spectrum(a);
    const std::vector<Complex> fb = counts_spectrum(b);
    for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
    fft_inplace(fa, a.d(), a.N(), FftSign::inverse);
    const double scale = 1.0 / static_cast<double>(fa.size());
    for (Complex& z : fa) z *= scale;
    std::vector<std::int64_t> counts;
    double worst = 0.0;
    if (round_counts(fa, total, counts, worst)) {
      if (stats != nullptr) *stats = {ConvolutionRoute::fft, worst};
      return AtomicMeasure(a.grid(), std::move(counts), den);
    }
  }
  if (stats != nullptr) *stats = {ConvolutionRoute::direct, 0.0};
  return convolve_direct(a, b);
}

AtomicMeasure conv_power(const AtomicMeasure& a, int ell, ConvolutionStats* stats) {
  if (ell < 0) throw DomainError("convolution power must be >= 0");
  if (ell == 0) {
    if (stats != nullptr) *stats = {};
    return AtomicMeasure::delta(a.grid(), 0, 1);
  }
  if (ell == 1) {
    if (stats != nullptr) *stats = {};
    return a;
  }
  const std::int64_t den = checked_pow(a.denominator(), ell, "denominator");
  const std::int64_t total = checked_pow(a.total_count(), ell, "total count");
  if (static_cast<double>(total) < kExactDoubleLimit) {
    std::vector<Complex> fa = counts_spectrum(a);
    for (Complex& z : fa) {
      Complex acc = 1.0, base = z;
      for (int e = ell; e > 0; e >>= 1) {
        if (e & 1) acc *= base;
        base *= base;
      }
      z = acc;
    }
    fft_inplace(fa, a.d(), a.N(), FftSign::inverse);
    const double scale = 1.0 / static_cast<double>(fa.size());
    for (Complex& z : fa) z *= scale;
    std::vector<std::int64_t> counts;
    double worst = 0.0;
    if (round_counts(fa, total, counts, worst)) {
      if (stats != nullptr) *stats = {ConvolutionRoute::fft, worst};
      return AtomicMeasure(a.grid(), std::move(counts), den);
    }
  }
  // Exact fallback by binary powering through verified convolutions.
  AtomicMeasure result = AtomicMeasure::delta(a.grid(), 0, 1);
  AtomicMeasure base = a;
  for (int e = ell; e > 0; e >>= 1) {
    if (e & 1) result = convolve(result, base);
    if (e > 1) base = convolve(base, base);
  }
  if (stats != nullptr) *stats = {ConvolutionRoute::direct, 0.0};
  return result;
}

GridFunction convolve(const GridFunction& f, const GridFunction& g) {
  if (f.d() != g.d() || f.R() != g.R()) throw DomainError("grid functions differ in shape");
  std::vector<Complex> bf(f.values().begin(), f.values().end());
  std::vector<Complex> bg(g.values().begin(), g.values().end());
  fft_inplace(bf, f.d(), f.R(), FftSign::forward);
  fft_inplace(bg, g.d(), g.R(), FftSign::forward);
  for (std::size_t i = 0; i < bf.size(); ++i) bf[i] *= bg[i];
  const double n = static_cast<double>(bf.size());
  return normalized_inverse(bf, f.d(), f.R(), 1.0 / (n * n));
}

GridFunction conv_power(const GridFunction& f, int ell) {
  if (ell < 0) throw DomainError("convolution power must be >= 0");
  if (ell == 0) {
    GridFunction unit(f.d(), f.R());
    unit.values_mut()[0] = static_cast<double>(unit.size());
    return unit;
  }
  if (ell == 1) return f;
  std::vector<Complex> bf(f.values().begin(), f.values().end());
  fft_inplace(bf, f.d(), f.R(), FftSign::forward);
  const double n = static_cast<double>(bf.size());
  for (Complex& z : bf) {
    const Complex w = z / n;
    Complex acc = 1.0, base = w;
    for (int e = ell; e > 0; e >>= 1) {
      if (e & 1) acc *= base;
      base *= base;
    }
    z = acc;
  }
  return normalized_inverse(bf, f.d(), f.R(), 1.0);
}

GridFunction convolve(const GridFunction& f, const AtomicMeasure& mu) {
  const int d = f.d();
  const Index R = f.R();
  const Index N = mu.N();
  if (mu.d() != d) throw DomainError("dimension mismatch between function and measure");
  if (R % N != 0) throw ConfigurationError("resolution must be a multiple of N");
  const std::vector<Index> support = mu.support();
  const Index cells = f.size();

  if (support.size() > 64) {
    std::vector<Complex> bf(f.values().begin(), f.values().end());
    fft_inplace(bf, d, R, FftSign::forward);
    const Spectrum ms = dft(mu, R);
    for (std::size_t i = 0; i < bf.size(); ++i) bf[i] *= ms.coeffs()[i];
    return normalized_inverse(bf, d, R, 1.0 / static_cast<double>(cells));
  }

  const Index ratio = R / N;
  std::vector<double> out(static_cast<std::size_t>(cells), 0.0);
  std::vector<Index> u(static_cast<std::size_t>(d)), x(static_cast<std::size_t>(d));
  for (Index atom : support) {
    mu.grid().coords(atom, u);
    const double w = mu.mass(atom);
    for (Index i = 0; i < cells; ++i) {
      unflatten(i, R, x);
      for (int k = 0; k < d; ++k) x[k] -= u[k] * ratio;
      out[static_cast<std::size_t>(i)] += w * f[flat_index(x, R)];
    }
  }
  return GridFunction(d, R, std::move(out));
}

GridFunction multiply(const GridFunction& f, const GridFunction& g) {
  if (f.d() != g.d() || f.R() != g.R()) throw DomainError("grid functions differ in shape");
  std::vector<double> out(static_cast<std::size_t>(f.size()));
  for (Index i = 0; i < f.size(); ++i) out[static_cast<std::size_t>(i)] = f[i] * g[i];
  return GridFunction(f.d(), f.R(), std::move(out));
}

GridFunction convolve_direct(const GridFunction& f, const GridFunction& g) {
  if (f.d() != g.d() || f.R() != g.R()) throw DomainError("grid functions differ in shape");
  const int d = f.d();
  const Index R = f.R();
  const Index cells = f.size();
  std::vector<double> out(static_cast<std::size_t>(cells), 0.0);
  std::vector<Index> x(static_cast<std::size_t>(d)), y(static_cast<std::size_t>(d));
  for (Index i = 0; i < cells; ++i) {
    unflatten(i, R, x);
    long double acc = 0.0L;
    for (Index j = 0; j < cells; ++j) {
      unflatten(j, R, y);
      for (int k = 0; k < d; ++k) y[k] = x[k] - y[k];
      acc += static_cast<long double>(f[j]) * g[flat_index(y, R)];
    }
    out[static_cast<std::size_t>(i)] = static_cast<double>(acc / cells);
  }
  return GridFunction(d, R, std::move(out));
}

}  // namespace salemlab

#include "salemlab/grid/dft.hpp"

#include <cmath>
#include <numbers>

#include "salemlab/errors.hpp"
#include "salemlab/grid/fft.hpp"

namespace salemlab {

namespace {

// e^{−2πi k/n} with k reduced exactly first.
Complex unit_root(Index k, Index n) {
  const double theta = -2.0 * std::numbers::pi * static_cast<double>(wrap(k, n)) /
                       static_cast<double>(n);
  return {std::cos(theta), std::sin(theta)};
}

}  // namespace

Spectrum dft(const AtomicMeasure& mu) { return dft(mu, mu.N()); }

Spectrum dft(const AtomicMeasure& mu, Index R) {
  const int d = mu.d();
  const Index N = mu.N();
  if (R % N != 0) throw ConfigurationError("ambient resolution must be a multiple of N");
  const Index cells = checked_cell_count(d, N);
  std::vector<Complex> buf(static_cast<std::size_t>(cells));
  const double den = static_cast<double>(mu.denominator());
  const auto counts = mu.counts();
  for (Index u = 0; u < cells; ++u)
    buf[static_cast<std::size_t>(u)] = static_cast<double>(counts[static_cast<std::size_t>(u)]) / den;
  fft_inplace(buf, d, N, FftSign::forward);
  if (R == N) return Spectrum(d, N, std::move(buf));

  // Periodic extension: slot k on the R grid reads slot (k mod N).
  const Index big = checked_cell_count(d, R);
  std::vector<Complex> out(static_cast<std::size_t>(big));
  std::vector<Index> c(static_cast<std::size_t>(d));
  for (Index k = 0; k < big; ++k) {
    unflatten(k, R, c);
    out[static_cast<std::size_t>(k)] = buf[static_cast<std::size_t>(flat_index(c, N))];
  }
  return Spectrum(d, R, std::move(out));
}

Spectrum dft(const GridFunction& f) {
  const Index cells = f.size();
  std::vector<Complex> buf(f.values().begin(), f.values().end());
  fft_inplace(buf, f.d(), f.R(), FftSign::forward);
  const double scale = 1.0 / static_cast<double>(cells);
  for (Complex& z : buf) z *= scale;
  return Spectrum(f.d(), f.R(), std::move(buf));
}

Spectrum cell_spectrum(const GridFunction& f) {
  Spectrum s = dft(f);
  const int d = f.d();
  const Index R = f.R();
  std::vector<Complex> axis(static_cast<std::size_t>(R));
  for (Index k = 0; k < R; ++k) {
    const double r = static_cast<double>(centered(k, R));
    if (r == 0.0) {
      axis[static_cast<std::size_t>(k)] = 1.0;
      continue;
    }
    const double x = std::numbers::pi * r / static_cast<double>(R);
    axis[static_cast<std::size_t>(k)] = std::polar(std::sin(x) / x, -x);
  }
  std::vector<Complex> out(s.coeffs().begin(), s.coeffs().end());
  for (Index i = 0; i < s.size(); ++i) {
    Index rest = i;
    Complex factor = 1.0;
    for (int ax = 0; ax < d; ++ax) {
      factor *= axis[static_cast<std::size_t>(rest % R)];
      rest /= R;
    }
    out[static_cast<std::size_t>(i)] *= factor;
  }
  return Spectrum(d, R, std::move(out));
}

std::vector<Complex> inverse_dft_complex(const Spectrum& s) {
  std::vector<Complex> buf(s.coeffs().begin(), s.coeffs().end());
  fft_inplace(buf, s.d(), s.R(), FftSign::inverse);
  return buf;
}

GridFunction inverse_dft(const Spectrum& s, double* max_imag) {
  const std::vector<Complex> buf = inverse_dft_complex(s);
  std::vector<double> values(buf.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < buf.size(); ++i) {
    values[i] = buf[i].real();
    worst = std::max(worst, std::abs(buf[i].imag()));
  }
  if (max_imag != nullptr) *max_imag = worst;
  return GridFunction(s.d(), s.R(), std::move(values));
}

Complex fourier_coefficient(const AtomicMeasure& mu, std::span<const Index> r) {
  const int d = mu.d();
  const Index N = mu.N();
  if (static_cast<int>(r.size()) != d) throw DomainError("frequency arity mismatch");
  std::vector<Index> u(static_cast<std::size_t>(d));
  Complex acc = 0.0;
  for (Index idx : mu.support()) {
    mu.grid().coords(idx, u);
    Index phase = 0;
    for (int k = 0; k < d; ++k) phase = wrap(phase + wrap(r[k], N) * u[k], N);
    acc += static_cast<double>(mu.count(idx)) * unit_root(phase, N);
  }
  return acc / static_cast<double>(mu.denominator());
}

Complex fourier_coefficient(const GridFunction& f, std::span<const Index> r) {
  const int d = f.d();
  const Index R = f.R();
  if (static_cast<int>(r.size()) != d) throw DomainError("frequency arity mismatch");
  std::vector<Index> j(static_cast<std::size_t>(d));
  Complex acc = 0.0;
  for (Index idx = 0; idx < f.size(); ++idx) {
    unflatten(idx, R, j);
    Index phase = 0;
    for (int k = 0; k < d; ++k) phase = wrap(phase + wrap(r[k], R) * j[k], R);
    acc += f[idx] * unit_root(phase, R);
  }
  return acc / static_cast<double>(f.size());
}

}  // namespace salemlab

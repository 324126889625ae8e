#pragma once

#include <span>
#include <vector>

#include "salemlab/grid/measure.hpp"

namespace salemlab {

// μ̂(r) = Σ_u mass(u) e^{−2πi r·u/N} on the window of Γ_N^d (R = N).
Spectrum dft(const AtomicMeasure& mu);

// μ̂ evaluated on the window of an ambient resolution R divisible by N; the
// values are N-periodic in each coordinate.
Spectrum dft(const AtomicMeasure& mu, Index R);

// f̂(r) = R^{−d} Σ_j f(j/R) e^{−2πi r·j/R}, so f̂(0) is the mean.
Spectrum dft(const GridFunction& f);

// Fourier coefficients of the piecewise-constant function equal to f[j] on
// the cell [j/R, (j+1)/R)^d. Differs from dft(f) by the per-axis factor
// e^{−πi r/R} sin(πr/R)/(πr/R).
Spectrum cell_spectrum(const GridFunction& f);

// Inverse of dft(GridFunction): Σ_r c_r e^{2πi r·j/R}. The imaginary part is
// dropped; `max_imag` receives its largest magnitude when non-null.
GridFunction inverse_dft(const Spectrum& s, double* max_imag = nullptr);

// Complex inverse without normalization: Σ_r c_r e^{2πi r·j/R}.
std::vector<Complex> inverse_dft_complex(const Spectrum& s);

// Direct O(|supp μ|) evaluation of μ̂ at one integer frequency vector.
Complex fourier_coefficient(const AtomicMeasure& mu, std::span<const Index> r);

// Direct O(R^d) evaluation of the normalized grid-function coefficient.
Complex fourier_coefficient(const GridFunction& f, std::span<const Index> r);

}  // namespace salemlab

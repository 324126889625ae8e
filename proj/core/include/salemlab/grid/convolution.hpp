#pragma once

#include "salemlab/grid/measure.hpp"

namespace salemlab {

// How an integer-count convolution was obtained.
enum class ConvolutionRoute { fft, direct };

struct ConvolutionStats {
  ConvolutionRoute route = ConvolutionRoute::fft;
  double max_rounding_residual = 0.0;
};

// Group convolution on Z_N^d. Counts are exact: the FFT result is rounded and
// accepted only if every residual is below 0.25 and the total matches;
// otherwise an exact sparse integer convolution is used.
AtomicMeasure convolve(const AtomicMeasure& a, const AtomicMeasure& b,
                       ConvolutionStats* stats = nullptr);

// a^{*ell}; ell = 0 gives δ_0.
AtomicMeasure conv_power(const AtomicMeasure& a, int ell, ConvolutionStats* stats = nullptr);

// Exact sparse integer convolution, O(|supp a|·|supp b|).
AtomicMeasure convolve_direct(const AtomicMeasure& a, const AtomicMeasure& b);

// Normalized convolution on Z_R^d: (f*g)(x) = R^{−d} Σ_y f(y) g(x−y), so
// that dft(f*g) = dft(f)·dft(g).
GridFunction convolve(const GridFunction& f, const GridFunction& g);

// f^{*ell}; ell = 0 gives the unit of the normalized convolution
// (R^d at the origin, zero elsewhere).
GridFunction conv_power(const GridFunction& f, int ell);

// (f*μ)(x) = Σ_u μ(u) f(x − u) for μ on Γ_N^d and f on a resolution R
// divisible by N. Computed directly over the support of μ.
GridFunction convolve(const GridFunction& f, const AtomicMeasure& mu);

// Pointwise product of two grid functions on the same grid.
GridFunction multiply(const GridFunction& f, const GridFunction& g);

// Direct O(R^{2d}) normalized convolution, used as an oracle.
GridFunction convolve_direct(const GridFunction& f, const GridFunction& g);

}  // namespace salemlab

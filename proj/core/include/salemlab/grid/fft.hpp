#pragma once

#include <complex>
#include <span>

#include "salemlab/grid/torus.hpp"

namespace salemlab {

enum class FftSign { forward, inverse };

// Unnormalized in-place d-dimensional cyclic DFT over {0..R-1}^d:
//   forward: X[k] = Σ_j x[j] e^{−2πi k·j/R}
//   inverse: x[j] = Σ_k X[k] e^{+2πi k·j/R}
// Backed by FFTW with estimate-mode plans, which are deterministic for a
// given size. Safe to call concurrently.
void fft_inplace(std::span<std::complex<double>> data, int d, Index R, FftSign sign);

}  // namespace salemlab

#pragma once

#include <string>

#include "salemlab/grid/measure.hpp"
#include "salemlab/regularity/modulus.hpp"

namespace salemlab {

enum class OffsetSampling {
  dyadic,     // offsets of 2^j cells along each axis and the main diagonal
  exhaustive  // every nonzero grid offset, O(R^{2d})
};

// Estimate of the C^{ρ,ψ} norm of a periodic grid function, with k = ⌊ρ⌋:
//   sup_norm = max_{|β|<=k} ‖∂^β f‖_∞
//   omega    = max_{|β|=k} sup_{x,h} |g(x+h) − g(x)| / (|h|^{ρ−k} ψ(|h|)),  g = ∂^β f
//              (0 when ρ is an integer)
//   norm     = sup_norm + omega
// Derivatives are 4th-order centered differences. The supremum runs over
// all grid base points and the sampled offsets, so omega is a lower bound
// for the grid seminorm.
struct HolderEstimate {
  int derivative_order = 0;
  double fractional = 0.0;
  double sup_norm = 0.0;
  double omega = 0.0;
  double norm = 0.0;
  Index offsets_sampled = 0;
  std::string sampling;
};

HolderEstimate holder_norm(const GridFunction& f, double rho, const ModulusPsi& psi,
                           OffsetSampling sampling = OffsetSampling::dyadic);

// ω_{s,ψ}(f) over the chosen offsets; s in (0, 1].
double holder_seminorm(const GridFunction& f, double exponent, const ModulusPsi& psi,
                       OffsetSampling sampling, Index* offsets_sampled = nullptr);

// ∂f/∂t_axis by the 4th-order centered stencil with spacing 1/R.
GridFunction finite_difference(const GridFunction& f, int axis);

// Pointwise f − c.
GridFunction shifted(const GridFunction& f, double c);

}  // namespace salemlab

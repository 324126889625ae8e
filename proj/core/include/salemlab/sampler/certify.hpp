#pragma once

#include <vector>

#include "salemlab/sampler/calibration.hpp"
#include "salemlab/sampler/constants.hpp"
#include "salemlab/sampler/report.hpp"
#include "salemlab/sampler/sample.hpp"

namespace salemlab {

// max_{r≠0} |μ̂_m(r)| over the fundamental window against
// 4 (log(8N^{d+h}))^{1/2} m^{−1/2}.
EventReport certify_fourier_decay(const AtomicMeasure& sigma, int h);

enum class CubeMode { fixed, log };

struct CubeParams {
  CubeMode mode = CubeMode::fixed;
  Rational eps{1, 2};  // fixed mode: cubes of measure <= m^{−ℓ} N^{−ε}
  double beta = 0.5;   // log mode: cubes of measure <= N^{−βℓ}
  bool all_prefixes = true;  // fixed mode; false checks σ_m only
};

// Cube regularity of σ_m^{*ℓ}.
//  fixed: max over prefixes m' <= m of max_Q σ_{m'}^{*ℓ}(Q), |Q| <= m'^{−ℓ}N^{−ε},
//         against M(ℓ,ε,h). Requires 0 < ε < d and m <= N^{(d−ε)/ℓ}.
//  log:   max_Q σ_m^{*ℓ}(Q), |Q| <= N^{−βℓ}, against
//         (βℓ)^{−1}(10^{d+1}ℓ²(ℓ+h))^ℓ log N / log log N. Requires 0 < β <= d/ℓ,
//         m <= N^β and N > 2ℓ; N <= e^{e^e} only produces a soft warning.
// Cubes use the largest lattice side allowed by the measure bound (side 1 when
// no side qualifies; flagged in the witness).
EventReport certify_cube_regularity(const Sample& sample, int ell, const CubeParams& params, int h,
                                    RegularityConstants* table = nullptr);

// max_u σ_m^{*ℓ}({u}) against M0 log N, for m <= (B N^d log N)^{1/ℓ}.
EventReport certify_point_mass(const AtomicMeasure& sigma, int ell, double B, int h, double M0);

// max over prefixes m' <= m and u of |σ^{*ℓ}(u) − m'^ℓ N^{−d}| / (m'^ℓ N^{−d})^{1/2}
// against C (log N)^{1+κ/2}. Requires ℓ >= κ+1, m <= (N^d log N)^{1/(ℓ−κ)},
// gcd(ℓ!, N) = 1. With all_prefixes = false only m' = m is checked.
EventReport certify_uniformity(const Sample& sample, int ell, int kappa, int h, double C,
                               bool all_prefixes = true);

// The three properties of a P-atom configuration μ = σ_P/P with P = ⌊N^β⌋:
//  item (i)   sup_{r≠0} |μ̂(r)| <= C1 N^{−β/2} (log N)^{1/2}
//  item (ii)  μ^{*ℓ}(Q) <= C2 N^{−ℓβ} log N for |Q| <= N^{−ℓβ}, 1 <= ℓ <= d/β
//  item (iii) max_u |μ^{*ℓ}(u) − N^{−d}| <= C3 N^{−d}(log N)^{(ℓ+1)/2} N^{−(ℓβ−d)/2},
//             d/β <= ℓ <= max_order
std::vector<EventReport> certify_point_mass_configuration(const Sample& sample, double beta,
                                                          int max_order, const Calibration& cal);

}  // namespace salemlab

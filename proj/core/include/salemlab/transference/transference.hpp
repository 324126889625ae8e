#pragma once

#include <string>
#include <vector>

#include "salemlab/grid/measure.hpp"
#include "salemlab/regularity/holder.hpp"
#include "salemlab/regularity/modulus.hpp"
#include "salemlab/sampler/report.hpp"

namespace salemlab {

// ⊓_N = N^d 𝟙_{[−1/2,1/2)^d}(N t) sampled on {j/R}^d; R must be divisible by 2N.
GridFunction box_kernel(int d, Index N, Index R);

// τ_N = N^{−d} Σ_{j} δ_{j/N}.
AtomicMeasure lattice_comb(int d, Index N);

// υ_N: tensor product of c (1 − (2N t)²)_+^4, normalized to mean 1 on the
// grid. Supported in |t_i| < 1/(2N).
struct MollifierSpec {
  int d = 1;
  Index N = 2;
};
GridFunction mollifier(const MollifierSpec& spec, Index R);

// f = υ_N * ⊓_N * μ together with g = ⊓_N * μ and the kernel υ_N * ⊓_N.
// All three are assembled by placing exact kernel copies at the atoms, so
// zeros outside the support are exact.
struct Mollified {
  GridFunction f;
  GridFunction g;
  GridFunction kernel;
};
Mollified mollify_build_f(const AtomicMeasure& mu, Index R);

// Σ_u μ(u) K(x − u) with K supported near the origin, computed sparsely.
GridFunction place_kernel(const GridFunction& kernel, const AtomicMeasure& mu);

// Per_p f(t) = f(p t mod 1) on the grid p·R.
GridFunction periodize(const GridFunction& f, Index p);

// F_m = Per_{2m+1} f for μ on Γ_N^d with N = m^k. R must be divisible by
// 2N(2m+1); f is built on R/(2m+1).
struct FmParams {
  Index m = 5;
  int k = 3;
  double alpha = 0.5;
  double beta = 0.6;
  int max_order = 3;  // 𝔫
};

struct FmBuild {
  GridFunction F;
  Mollified parts;
  FmParams params;
  Index N = 0;
  Index p = 0;  // 2m+1
  std::vector<std::string> warnings;
};

FmBuild build_F_m(const AtomicMeasure& mu, const FmParams& params, Index R);

// Smallest R = refine · 2N(2m+1).
Index fm_resolution(const FmParams& params, int d, Index refine);

// Support of F_m against the cover by (2m+1)^d ⌊m^{kβ}⌋ cubes of side m^{−k−1}:
// every support cell must lie within 1/N (per axis, in f coordinates) of an
// atom, the number of cubes used is (2m+1)^d · #distinct atoms.
struct SupportCover {
  Index cubes_used = 0;
  Index cube_budget = 0;
  Index support_cells = 0;
  bool covered = false;
  bool side_fits = false;  // 2/(N(2m+1)) <= m^{−k−1}
  bool pass() const { return covered && side_fits && cubes_used <= cube_budget; }
};
SupportCover support_cover(const FmBuild& build, const AtomicMeasure& mu);

struct FmCheckParams {
  double eta = 0.5;
  ModulusPsi psi;
  OffsetSampling sampling = OffsetSampling::dyadic;
};

// Properties (i)–(v) of F_m as report entries:
//   mean             |mean F_m − 1| <= 1e−12
//   support          SupportCover
//   decay            sup_{r≠0} |r|^{α/2} |F̂_m(r)| / ψ(1/|r|) <= η
//   small_cubes.n    ∫_Q F_m^{*n} / (ψ(|Q|) |Q|^{nα/d}) <= η, sides <= 2/√m, 1 <= n < d/α
//   holder.n         ‖F_m^{*n} − 1‖_{C^{ρ_n,ψ}} <= η, ρ_n = (nα−d)/2, d/α <= n <= 𝔫
//   rectangles.n     ∫_R F_m^{*n} / |R| <= 1 + η, sides >= 1/√m, n < d/α
// Cube and rectangle sides run over dyadic cell counts within the stated
// ranges plus the extreme admissible side; every corner is checked.
std::vector<EventReport> verify_Fm_properties(const FmBuild& build, const AtomicMeasure& mu,
                                              const FmCheckParams& params);

// Components of the composite distance between (supp g, g) and
// (supp(F_m g) ∪ A, F_m g), where A is a sub-lattice of supp g at spacing
// ε' (a finite ε'-net).
struct MetricComponents {
  double hausdorff = 0.0;
  double zero_coefficient = 0.0;
  double weighted_fourier = 0.0;
  std::vector<int> holder_orders;
  std::vector<double> holder_terms;   // ‖g^{*n} − (F_m g)^{*n}‖_{C^{ρ_n,ψ}}
  std::vector<int> low_orders;
  std::vector<double> low_ratios;     // max_Q ∫_Q (F_m g)^{*n} / (ψ(|Q|)|Q|^{nα/d})
  std::vector<double> input_slack;    // 1 − max_Q ∫_Q g^{*n} / (ψ(|Q|)|Q|^{nα/d})
  double total = 0.0;
};

struct ApproxParams {
  double alpha = 0.5;
  ModulusPsi psi;
  int max_order = 3;
  double net_spacing = 0.01;
  OffsetSampling sampling = OffsetSampling::dyadic;
};

// g and F_m on the same grid; g >= 0 (DomainError otherwise).
MetricComponents approximation_step(const GridFunction& g, const GridFunction& F, const ApproxParams& params);

// Samples of a real trigonometric polynomial Σ c_r e^{2πi r·t} given by
// (frequency, coefficient) pairs; d = 1.
GridFunction trig_polynomial_1d(Index R, const std::vector<std::pair<Index, Complex>>& terms);

}  // namespace salemlab

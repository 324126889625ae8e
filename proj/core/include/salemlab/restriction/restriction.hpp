#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "salemlab/grid/measure.hpp"
#include "salemlab/regularity/spectral.hpp"

namespace salemlab {

// Discrete restriction inequality on Γ_N^d:
//   Σ_ξ |(gμ)^(ξ)|^{2n} <= N^d · max_u μ^{*n}({u}) · (Σ_u |g(u)|² μ(u))^n.
// g is indexed by flat lattice index (size N^d); entries off supp μ are ignored.
struct RestrictionResult {
  int n = 1;
  double lhs = 0.0;           // spectral sum
  double lhs_parseval = 0.0;  // N^d Σ_u |(gμ)^{*n}(u)|²
  double rhs = 0.0;
  double max_power_mass = 0.0;  // max_u μ^{*n}({u})
  double weighted_l2 = 0.0;     // Σ |g|² μ
  double ratio = 0.0;
};
RestrictionResult restriction_check(const AtomicMeasure& mu, std::span<const Complex> g, int n);

// A_p = sup_{‖f‖_p <= 1} (Σ_u μ(u) |f̂(ξ_u)|²)^{1/2} for f on Z_W^d with
// counting-measure norms and unnormalized f̂(ξ) = Σ_x f(x) e^{−2πi x·ξ/W}.
// μ's atom u sits at frequency u·(W/N). W = 0 means W = N.
struct ApOptions {
  Index ambient = 0;
  int restarts = 8;
  int max_iter = 300;
  double tol = 1e-12;
  int max_order = 4;  // duality bounds use n <= max_order
  std::uint64_t seed = 1;
};

struct ApEstimate {
  double p = 2.0;
  Index ambient = 0;
  double lower = 0.0;  // attained by an explicit f
  double upper = 0.0;
  std::string upper_source;  // "interpolation", "duality.nK" or "exact"
  bool exact = false;
  bool converged = true;
  int iterations = 0;
};
ApEstimate estimate_Ap(const AtomicMeasure& mu, double p, const ApOptions& opts = {});

// (Σ_u μ(u)|f̂(ξ_u)|²)^{1/2} / ‖f‖_p for one test function on Z_W^d.
double restriction_ratio(const AtomicMeasure& mu, Index ambient, std::span<const Complex> f, double p);

// Smallest λ allowed by kernel integrability: d(1/q − 1/2) − (d − α)/2.
double lambda_critical(int d, double alpha, double q);

struct ChiSpec {
  enum class Kind { one, bump } kind = Kind::bump;
  double radius = 1.0;  // support radius of the bump
};

// m_λ(ξ) = Σ_u μ(u) χ(ξ − u/N) |ξ − u/N|^{λ−α} sampled on a frequency window of
// W points per axis covering `length` units (spacing h = length/W, atoms on
// grid points), and K_λ = inverse Fourier transform on the dual grid.
struct MultiplierKernel {
  int d = 1;
  Index W = 0;
  double length = 0.0;
  double h = 0.0;
  double lambda = 0.0;
  double alpha = 0.0;
  std::vector<double> m;  // W^d values, axis 0 slowest
  double mass = 0.0;      // Σ m h^d
  std::vector<double> qs;
  std::vector<double> kernel_norms;  // ‖K_λ‖_q over the spatial window
};
MultiplierKernel build_m_lambda(const AtomicMeasure& mu, double lambda, double alpha, const ChiSpec& chi, Index W,
                                Index length, const std::vector<double>& qs);

struct KernelSweep {
  std::vector<Index> windows;
  std::vector<double> qs;
  std::vector<std::vector<double>> norms;  // [q][window]
  std::vector<double> slopes;              // log-log growth of ‖K_λ‖_q in W
  std::vector<double> lambda_crit;         // per q
  double q_atomic = 0.0;  // d/(d+λ−α): tail threshold once |x| exceeds N
};
KernelSweep kernel_norm_sweep(const AtomicMeasure& mu, double lambda, double alpha, const ChiSpec& chi,
                              const std::vector<Index>& windows, Index length, const std::vector<double>& qs);

// Annulus pieces h = η_r * μ on the frequency torus Z_W^d (W = N·oversample,
// spacing 1/W), acting on f: Z_W^d -> C. Norms are counting-measure sums.
struct AnnulusParams {
  double r = 0.125;
  double p = 4.0 / 3.0;
  double q = 2.0;
  Index oversample = 4;
  int n_der = 2;
  int batch = 50;
  std::uint64_t seed = 1;
  bool decomposition = false;
  // Profile in t = |ξ|/r; must vanish outside [1/4, 1]. Empty = default bump.
  std::function<double(double)> eta;
};

struct AnnulusSetup {
  int d = 1;
  Index W = 0;
  double r = 0.0;
  std::vector<double> h;  // W^d values
  ApEstimate ap;
  double varpi = 0.0;
  double scale = 0.0;  // r^{d−d/q} A_p ϖ(r)^{1/2}
  std::vector<double> derivative_norms;  // r^j ‖∂^j η_r‖_∞ along axis 0, j = 0..n_der
  double derivative_residual = 0.0;      // max(0, max_j norm_j − 1)
  bool order_ok = false;                 // n_der > d(1/q − 1/2)
};
AnnulusSetup prepare_annulus(const AtomicMeasure& mu, const AnnulusParams& params, const ApEstimate* ap = nullptr);
double annulus_ratio(const AnnulusSetup& setup, std::span<const Complex> f, double p, double q);

struct AnnulusReport {
  double r = 0.0;
  double max_ratio = 0.0;
  std::vector<double> ratios;
  double ap_upper = 0.0;
  double varpi = 0.0;
  double scale = 0.0;
  std::vector<double> derivative_norms;
  double derivative_residual = 0.0;
  bool order_ok = false;
  // decomposition mode
  double reconstruction_error = 0.0;
  std::vector<double> piece_sup;  // ‖h_n‖_∞
};
AnnulusReport annulus_multiplier_check(const AtomicMeasure& mu, const AnnulusParams& params,
                                       const ApEstimate* ap = nullptr);

// Σ_j (t_j^{−α} ϖ(t_j))^{1/2} over dyadic t_j = 2^{−j} in [1/N, 1/2].
struct EndpointSum {
  std::vector<double> t;
  std::vector<double> terms;
  std::vector<double> partial;
  double slope = 0.0;  // least-squares slope of log2(term) in j
  bool converges = false;
};
EndpointSum endpoint_dyadic_sum(const AtomicMeasure& mu, double alpha);

struct LowerRegularity {
  double r = 0.0;
  double min_ratio = 0.0;  // min over atoms x of μ(B(x,r)) / r^α
  Index witness = -1;
};

struct AdDiagnostic {
  double alpha = 0.0;
  double c_lower = 0.0;
  std::vector<LowerRegularity> lower;
  bool lower_regular = false;
  std::vector<Block> blocks;
  double max_block = 0.0;
  bool blocks_decay = false;  // last block <= first / 4
  bool degenerate_window = false;
  bool consistent = true;
  std::string verdict;
  EndpointSum endpoint;
};
AdDiagnostic ad_regularity_diagnostic(const AtomicMeasure& mu, double alpha, double c_lower,
                                      std::vector<double> rhos = {});

}  // namespace salemlab

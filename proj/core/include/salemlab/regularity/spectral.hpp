#pragma once

#include <vector>

#include "salemlab/grid/measure.hpp"

namespace salemlab {

// Truncated γ-energy Σ_{r≠0} |μ̂(r)|² |r|^{γ−d} over the fundamental window,
// with shell sums S_j over 2^j <= |r| < 2^{j+1}. The slope is the least
// squares fit of log2 S_j against j over the shells lying fully inside the
// window; a positive slope is reported as a divergence trend.
struct EnergyResult {
  double gamma = 0.0;
  double energy = 0.0;
  std::vector<double> shell_sums;
  int complete_shells = 0;
  double shell_slope = 0.0;
  bool diverging_trend = false;
};

EnergyResult energy_spectral(const AtomicMeasure& mu, double gamma);

// Energy of a family of measures at increasing N, with the fitted exponent
// of E ∝ N^s. For P ~ N^β random atoms s ≈ γ − β, so the sign of s separates
// γ < β from γ > β.
struct EnergyTrend {
  std::vector<Index> N;
  std::vector<double> energy;
  double exponent = 0.0;
};

EnergyTrend energy_trend(const std::vector<AtomicMeasure>& family, double gamma);

// B_ρ(μ) = (Σ_{ρ<=|ξ|<=2ρ} |μ̂(ξ)|^{2d/α})^{α/(2d)} over the window.
struct Block {
  double rho = 0.0;
  double value = 0.0;
  Index frequencies = 0;
};

std::vector<Block> b_rho_blocks(const AtomicMeasure& mu, double alpha, const std::vector<double>& rhos);

// ϖ(r) = sup_x μ(B(x, r)) over closed balls. Radii are snapped down to
// multiples of 1/(2N); for such radii the supremum over all centers is
// attained on the lattice (1/(2N))Z^d, which is searched exhaustively.
struct BallMass {
  double radius = 0.0;  // requested
  double snapped = 0.0;
  double mass = 0.0;
};

std::vector<BallMass> ball_mass_profile(const AtomicMeasure& mu, const std::vector<double>& radii);

// Least-squares slope of log y against log x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace salemlab

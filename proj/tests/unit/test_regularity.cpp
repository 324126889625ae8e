#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "salemlab/errors.hpp"
#include "salemlab/regularity/holder.hpp"
#include "salemlab/regularity/modulus.hpp"
#include "salemlab/regularity/spectral.hpp"
#include "salemlab/sampler/sample.hpp"

using namespace salemlab;

namespace {

AtomicMeasure random_probability(Index N, std::int64_t P, std::uint64_t seed, int d = 1) {
  SampleConfig c{TorusGrid(d, N)};
  c.atom_count = P;
  c.seed = seed;
  return sample_points(c, 0).sigma().probability();
}

GridFunction sampled(Index R, double (*fn)(double)) {
  GridFunction f(1, R);
  for (Index j = 0; j < R; ++j) f.values_mut()[static_cast<std::size_t>(j)] = fn(double(j) / double(R));
  return f;
}

}  // namespace

TEST(ModulusPsi, ConstantVariant) {
  const ModulusPsi psi;
  EXPECT_EQ(psi(1e-9), 1.0);
  EXPECT_EQ(psi_doubling_check(psi, 1e-12).constant, 1.0);
}

TEST(ModulusPsi, InverseLogAtEMinusTwo) {
  EXPECT_NEAR(ModulusPsi(PsiVariant::inverse_log)(std::exp(-2.0)), 0.5, 1e-15);
  // constant extension above the cutoff
  EXPECT_NEAR(ModulusPsi(PsiVariant::inverse_log)(0.9), 1.0, 1e-15);
  EXPECT_NEAR(ModulusPsi(PsiVariant::inverse_loglog)(0.5), 1.0, 1e-15);
  EXPECT_THROW(ModulusPsi()(0.0), DomainError);
  EXPECT_THROW(ModulusPsi::parse("bogus"), ConfigurationError);
}

TEST(ModulusPsi, ExpSqrtLogDoublingConstant) {
  const ModulusPsi psi(PsiVariant::exp_sqrt_log);
  const auto chk = psi_doubling_check(psi, std::ldexp(1.0, -40), std::exp(-1.0));
  EXPECT_TRUE(chk.pass);
  EXPECT_LE(chk.constant, std::numbers::e);
  // The ratio exp(√log(2/t) − √log(1/t)) is largest at the top of the scan.
  double oracle = 0.0;
  for (double t = std::exp(-1.0); t / 2 >= std::ldexp(1.0, -40); t /= 2)
    oracle = std::max(oracle, std::exp(std::sqrt(std::log(2 / t)) - std::sqrt(std::log(1 / t))));
  EXPECT_NEAR(chk.constant, oracle, 1e-12);
}

TEST(ModulusPsi, AllVariantsAreMonotone) {
  for (auto v : {PsiVariant::constant, PsiVariant::exp_sqrt_log, PsiVariant::inverse_log, PsiVariant::inverse_loglog})
    EXPECT_TRUE(psi_doubling_check(ModulusPsi(v), 1e-300).pass);
}

TEST(HolderNorm, ConstantFunctionIsZero) {
  const auto f = GridFunction::constant(2, 16, 3.0);
  for (double rho : {0.3, 1.0, 1.5, 2.25}) {
    const auto e = holder_norm(shifted(f, 3.0), rho, ModulusPsi(PsiVariant::inverse_log));
    EXPECT_EQ(e.norm, 0.0);
  }
}

TEST(HolderNorm, SineMatchesExhaustivePairs) {
  const auto f = sampled(256, [](double x) { return std::sin(2 * std::numbers::pi * x); });
  const auto est = holder_norm(f, 0.5, ModulusPsi(), OffsetSampling::exhaustive);
  const std::vector<double> v(f.values().begin(), f.values().end());
  EXPECT_NEAR(est.omega, oracle::holder_pairs_1d(v, 0.5, ModulusPsi()), 1e-12);
  EXPECT_NEAR(est.sup_norm, 1.0, 1e-12);
  // The dyadic estimate is a lower bound of the exhaustive one.
  EXPECT_LE(holder_norm(f, 0.5, ModulusPsi()).omega, est.omega + 1e-15);
}

TEST(HolderNorm, ExhaustiveMatchesPairsWithLogModulus) {
  const auto f = sampled(128, [](double x) { return std::cos(6 * std::numbers::pi * x) + x * (1 - x); });
  const ModulusPsi psi(PsiVariant::exp_sqrt_log);
  const std::vector<double> v(f.values().begin(), f.values().end());
  EXPECT_NEAR(holder_norm(f, 0.7, psi, OffsetSampling::exhaustive).omega, oracle::holder_pairs_1d(v, 0.7, psi), 1e-12);
}

TEST(HolderNorm, DerivativesUseFourthOrderStencil) {
  const auto f = sampled(512, [](double x) { return std::sin(2 * std::numbers::pi * x); });
  const auto d1 = finite_difference(f, 0);
  for (Index j = 0; j < 512; j += 37)
    EXPECT_NEAR(d1[j], 2 * std::numbers::pi * std::cos(2 * std::numbers::pi * j / 512.0), 1e-7);
  const auto e = holder_norm(f, 1.0, ModulusPsi());
  EXPECT_NEAR(e.sup_norm, 2 * std::numbers::pi, 1e-7);
  EXPECT_EQ(e.omega, 0.0);
}

TEST(HolderNorm, CoarseningDoesNotIncreaseTheEstimate) {
  GridFunction fine(1, 256), coarse(1, 128);
  for (Index j = 0; j < 256; ++j) {
    const double x = j / 256.0;
    fine.values_mut()[static_cast<std::size_t>(j)] = std::sqrt(std::abs(std::sin(3 * std::numbers::pi * x)));
    if (j % 2 == 0) coarse.values_mut()[static_cast<std::size_t>(j / 2)] = fine[j];
  }
  const ModulusPsi psi;
  EXPECT_LE(holder_norm(coarse, 0.5, psi, OffsetSampling::exhaustive).omega,
            holder_norm(fine, 0.5, psi, OffsetSampling::exhaustive).omega + 1e-15);
}

TEST(Energy, UniformCombHasNoEnergy) {
  const auto e = energy_spectral(AtomicMeasure::uniform(TorusGrid(1, 64)), 0.5);
  EXPECT_NEAR(e.energy, 0.0, 1e-20);
}

TEST(Energy, PointMassShellsGrowLikeTwoToGamma) {
  const auto e = energy_spectral(AtomicMeasure::delta(TorusGrid(1, 1024)), 0.4);
  EXPECT_TRUE(e.diverging_trend);
  EXPECT_NEAR(e.shell_slope, 0.4, 0.05);
  EXPECT_GE(e.complete_shells, 8);
}

TEST(Energy, ShellSumsMatchBruteForce) {
  const auto mu = random_probability(64, 8, 3);
  const auto e = energy_spectral(mu, 0.3);
  const auto m = mu.masses();
  std::vector<double> shells(e.shell_sums.size(), 0.0);
  for (std::int64_t r = -32; r < 32; ++r) {
    if (r == 0) continue;
    const double a = std::abs(double(r));
    const auto j = static_cast<std::size_t>(std::floor(std::log2(a)));
    shells[j] += std::norm(oracle::dft1(m, r)) * std::pow(a, 0.3 - 1.0);
  }
  for (std::size_t j = 0; j < shells.size(); ++j) EXPECT_NEAR(e.shell_sums[j], shells[j], 1e-12);
}

TEST(Energy, AcrossNExponentSeparatesGammaFromBeta) {
  std::vector<AtomicMeasure> fam;
  for (Index N : {251, 509, 1009, 2003, 4001}) fam.push_back(random_probability(N, floor_power(N, 0.5), 3));
  EXPECT_LT(energy_trend(fam, 0.25).exponent, 0.0);
  EXPECT_GT(energy_trend(fam, 0.75).exponent, 0.0);
  EXPECT_THROW(energy_spectral(fam[0], 1.0), DomainError);
}

TEST(BallMass, PointMassIsOneAtEveryRadius) {
  for (const auto& b : ball_mass_profile(AtomicMeasure::delta(TorusGrid(2, 9), 5), {0.01, 0.2, 0.5}))
    EXPECT_EQ(b.mass, 1.0);
}

TEST(BallMass, UniformCombIntervalCounting) {
  const Index N = 40;
  const auto tau = AtomicMeasure::uniform(TorusGrid(1, N));
  std::vector<double> radii;
  for (int k = 1; k <= 20; ++k) radii.push_back(double(k) / N);
  for (const auto& b : ball_mass_profile(tau, radii)) {
    const double expect = std::min(1.0, (2 * std::floor(b.radius * N + 1e-9) + 1) / N);
    EXPECT_NEAR(b.mass, expect, 1e-15) << b.radius;
  }
}

TEST(BallMass, HalfLatticeRadiiMatchContinuumOracle) {
  const Index N = 97;
  const auto mu = random_probability(N, 12, 8);
  std::vector<double> radii;
  for (int k = 1; k <= 2 * 20; k += 3) radii.push_back(k / (2.0 * N));
  const auto prof = ball_mass_profile(mu, radii);
  double prev = 0.0;
  for (const auto& b : prof) {
    EXPECT_NEAR(b.mass, oracle::ball_1d(mu.masses(), b.snapped), 1e-15);
    EXPECT_GE(b.mass, prev);
    prev = b.mass;
  }
}

TEST(BRho, PointMassCountsFrequencies) {
  const auto blocks = b_rho_blocks(AtomicMeasure::delta(TorusGrid(1, 1009)), 0.5, {8, 16, 32});
  for (const auto& b : blocks) {
    EXPECT_EQ(b.frequencies, 2 * (static_cast<Index>(b.rho) + 1));
    EXPECT_NEAR(b.value, std::pow(double(b.frequencies), 0.25), 1e-12);
  }
  EXPECT_LT(blocks[0].value, blocks[2].value);
}

TEST(BRho, UniformCombVanishes) {
  for (const auto& b : b_rho_blocks(AtomicMeasure::uniform(TorusGrid(1, 256)), 0.5, {4, 16, 64}))
    EXPECT_NEAR(b.value, 0.0, 1e-12);
}

TEST(BRho, MatchesDirectBlockSum) {
  const auto mu = random_probability(1009, 31, 4);
  const auto m = mu.masses();
  for (const auto& b : b_rho_blocks(mu, 0.5, {8, 32})) {
    double acc = 0.0;
    for (std::int64_t r = -504; r <= 504; ++r)
      if (std::abs(double(r)) >= b.rho && std::abs(double(r)) <= 2 * b.rho) acc += std::pow(std::abs(oracle::dft1(m, r)), 4.0);
    EXPECT_NEAR(b.value, std::pow(acc, 0.25), 1e-9);
  }
}

TEST(BRho, EnergyConsistencyAtSmallN) {
  // Σ_j 2^{j(d−α)} B_{2^j}² recomputed from a direct DFT.
  const auto mu = random_probability(64, 6, 9);
  double lhs = 0.0, rhs = 0.0;
  const auto m = mu.masses();
  for (int j = 0; (1 << (j + 1)) <= 16; ++j) {
    const double rho = std::ldexp(1.0, j);
    const double B = b_rho_blocks(mu, 0.5, {rho})[0].value;
    lhs += std::pow(2.0, j * 0.5) * B * B;
    double acc = 0.0;
    for (std::int64_t r = -32; r < 32; ++r)
      if (std::abs(double(r)) >= rho && std::abs(double(r)) <= 2 * rho) acc += std::pow(std::abs(oracle::dft1(m, r)), 4.0);
    rhs += std::pow(2.0, j * 0.5) * std::sqrt(acc);
  }
  EXPECT_NEAR(lhs, rhs, 1e-9);
}

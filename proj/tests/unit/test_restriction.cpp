#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "salemlab/errors.hpp"
#include "salemlab/restriction/restriction.hpp"
#include "salemlab/sampler/sample.hpp"

using namespace salemlab;

namespace {

AtomicMeasure random_probability(Index N, std::int64_t P, std::uint64_t seed, int d = 1) {
  SampleConfig c{TorusGrid(d, N)};
  c.atom_count = P;
  c.seed = seed;
  return sample_points(c, 0).sigma().probability();
}

std::vector<Complex> random_complex(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<Complex> v(n);
  for (auto& z : v) z = Complex(U(gen), U(gen));
  return v;
}

// Σ_ξ |Σ_u g(u)μ(u) e^{−2πiξu/N}|^{2n} and max_u μ^{*n}(u) by brute force, d = 1.
std::pair<double, double> brute_restriction(const std::vector<double>& mass, const std::vector<Complex>& g, int n) {
  const auto N = static_cast<std::int64_t>(mass.size());
  double lhs = 0.0;
  for (std::int64_t xi = 0; xi < N; ++xi) {
    Complex s = 0.0;
    for (std::int64_t u = 0; u < N; ++u)
      if (mass[static_cast<std::size_t>(u)] != 0.0)
        s += g[static_cast<std::size_t>(u)] * mass[static_cast<std::size_t>(u)] *
             std::polar(1.0, -2.0 * std::numbers::pi * double(xi * u % N) / double(N));
    lhs += std::pow(std::norm(s), n);
  }
  std::vector<double> power(static_cast<std::size_t>(N), 0.0);
  power[0] = 1.0;
  for (int k = 0; k < n; ++k) {
    std::vector<double> next(static_cast<std::size_t>(N), 0.0);
    for (std::int64_t a = 0; a < N; ++a)
      for (std::int64_t b = 0; b < N; ++b)
        next[static_cast<std::size_t>((a + b) % N)] += power[static_cast<std::size_t>(a)] * mass[static_cast<std::size_t>(b)];
    power = next;
  }
  return {lhs, *std::max_element(power.begin(), power.end())};
}

}  // namespace

TEST(Restriction, PointMassSaturates) {
  const Index N = 16;
  const auto mu = AtomicMeasure::delta(TorusGrid(1, N));
  const std::vector<Complex> g(N, Complex(1.0));
  const auto r = restriction_check(mu, g, 1);
  EXPECT_NEAR(r.lhs, double(N), 1e-12);
  EXPECT_NEAR(r.rhs, double(N), 1e-12);
  EXPECT_NEAR(r.ratio, 1.0, 1e-12);
}

TEST(Restriction, UniformSaturates) {
  const Index N = 12;
  const auto mu = AtomicMeasure::uniform(TorusGrid(2, N));
  const std::vector<Complex> g(N * N, Complex(1.0));
  const auto r = restriction_check(mu, g, 1);
  EXPECT_NEAR(r.lhs, 1.0, 1e-12);
  EXPECT_NEAR(r.rhs, 1.0, 1e-12);
}

TEST(Restriction, TwoAtomsMatchBruteForce) {
  const Index N = 64;
  const std::vector<Index> atoms{3, 41};
  const auto mu = AtomicMeasure::from_atoms(TorusGrid(1, N), atoms).probability();
  const auto g = random_complex(N, 17);
  for (int n : {2, 3}) {
    const auto r = restriction_check(mu, g, n);
    const auto [lhs, mx] = brute_restriction(mu.masses(), g, n);
    EXPECT_NEAR(r.lhs, lhs, 1e-9 * std::max(1.0, lhs));
    EXPECT_NEAR(r.lhs_parseval, lhs, 1e-9 * std::max(1.0, lhs));
    EXPECT_NEAR(r.max_power_mass, mx, 1e-12);
    EXPECT_LE(r.ratio, 1.0 + 1e-9);
  }
}

TEST(Restriction, RatioNeverExceedsOne) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Index N = 31 + 2 * Index(s);
    const auto mu = random_probability(N, 3 + Index(s % 5), s);
    const auto g = random_complex(N, 100 + s);
    for (int n = 1; n <= 3; ++n) EXPECT_LE(restriction_check(mu, g, n).ratio, 1.0 + 1e-9) << s << " " << n;
  }
  const auto mu2 = random_probability(9, 6, 3, 2);
  const auto g2 = random_complex(81, 4);
  EXPECT_LE(restriction_check(mu2, g2, 2).ratio, 1.0 + 1e-9);
}

TEST(RestrictionConstant, P2ClosedFormAndCoordinateSearch) {
  for (Index N : {8, 16, 32}) {
    const auto mu = random_probability(N, 5, N);
    const auto est = estimate_Ap(mu, 2.0);
    double heaviest = 0.0;
    for (double m : mu.masses()) heaviest = std::max(heaviest, m);
    const double closed = std::sqrt(double(N) * heaviest);
    EXPECT_TRUE(est.exact);
    EXPECT_NEAR(est.lower, closed, 1e-9);
    EXPECT_NEAR(est.upper, closed, 1e-9);
    // every modulated point spectrum and every point mass in space
    double best = 0.0;
    for (Index k = 0; k < N; ++k) {
      std::vector<Complex> wave(N), spike(N, Complex(0.0));
      for (Index x = 0; x < N; ++x) wave[x] = std::polar(1.0, 2.0 * std::numbers::pi * double(x * k % N) / double(N));
      spike[k] = 1.0;
      best = std::max({best, restriction_ratio(mu, 0, wave, 2.0), restriction_ratio(mu, 0, spike, 2.0)});
    }
    EXPECT_NEAR(best, closed, 1e-9);
    for (std::uint64_t s = 0; s < 20; ++s) EXPECT_LE(restriction_ratio(mu, 0, random_complex(N, s), 2.0), closed + 1e-9);
  }
}

TEST(RestrictionConstant, PointMassClosedForm) {
  const Index N = 32;
  const auto mu = AtomicMeasure::delta(TorusGrid(1, N));
  for (double p : {1.0, 1.25, 4.0 / 3.0, 1.6, 2.0}) {
    const auto est = estimate_Ap(mu, p);
    const double closed = std::pow(double(N), 1.0 - 1.0 / p);
    EXPECT_NEAR(est.lower, closed, 1e-9 * closed) << p;
    EXPECT_NEAR(est.upper, closed, 1e-9 * closed) << p;
  }
}

TEST(RestrictionConstant, SandwichHolds) {
  for (std::uint64_t s = 0; s < 6; ++s) {
    const auto mu = random_probability(64, 8, s);
    for (double p : {1.0, 1.2, 4.0 / 3.0, 1.5, 1.8, 2.0}) {
      ApOptions o;
      o.ambient = 128;
      o.seed = s;
      const auto est = estimate_Ap(mu, p, o);
      EXPECT_LE(est.lower, est.upper * (1.0 + 1e-9));
      EXPECT_GT(est.lower, 0.0);
    }
  }
  EXPECT_THROW(estimate_Ap(random_probability(64, 8, 1), 2.5), DomainError);
  ApOptions bad;
  bad.ambient = 100;
  EXPECT_THROW(estimate_Ap(random_probability(64, 8, 1), 1.5, bad), ConfigurationError);
}

TEST(Multiplier, PointMassWithoutCutoffIsPowerProfile) {
  const Index N = 16, W = 256, L = 4;
  const double lambda = 0.3, alpha = 0.5;
  const auto mu = AtomicMeasure::delta(TorusGrid(1, N));
  const auto mk = build_m_lambda(mu, lambda, alpha, {ChiSpec::Kind::one, 1.0}, W, L, {2.0});
  const Index s = W / (N * L);
  const Index J0 = (W - N * s) / 2;
  for (Index j = 0; j < W; ++j) {
    if (j == J0) continue;
    EXPECT_NEAR(mk.m[j], std::pow(std::abs(double(j - J0)) * mk.h, lambda - alpha), 1e-12);
  }
  EXPECT_NEAR(mk.m[J0], std::pow(mk.h / 2.0, lambda - alpha) / (1.0 + lambda - alpha), 1e-12);
}

TEST(Multiplier, ExponentCancellationPreservesMass) {
  const auto mu = random_probability(32, 6, 4);
  const ChiSpec chi{ChiSpec::Kind::bump, 1.0};
  const auto mk = build_m_lambda(mu, 0.5, 0.5, chi, 512, 4, {});
  const auto one = build_m_lambda(AtomicMeasure::delta(TorusGrid(1, 32)), 0.5, 0.5, chi, 512, 4, {});
  EXPECT_NEAR(mk.mass, one.mass * mu.total_mass(), 1e-12);
  EXPECT_GT(one.mass, 0.0);
  EXPECT_THROW(build_m_lambda(mu, -0.6, 0.5, chi, 512, 4, {}), DomainError);
  EXPECT_THROW(build_m_lambda(mu, 0.3, 0.5, chi, 500, 4, {}), ConfigurationError);
  EXPECT_THROW(build_m_lambda(mu, 0.3, 0.5, {ChiSpec::Kind::bump, 2.0}, 512, 4, {}), ConfigurationError);
}

TEST(Multiplier, KernelNormsAcrossWindows) {
  // d = 1, α = 1/2, λ = 0.3: ‖K‖_2 settles, ‖K‖_{1/2} keeps growing.
  const auto mu = random_probability(64, 8, 5);
  const auto sw = kernel_norm_sweep(mu, 0.3, 0.5, {}, {512, 1024, 2048, 4096}, 4, {0.5, 2.0});
  EXPECT_LT(std::abs(sw.slopes[1]), 0.02);
  EXPECT_GT(sw.slopes[0], 0.5);
  EXPECT_GT(sw.lambda_crit[0], 0.3);
  EXPECT_LT(sw.lambda_crit[1], 0.3);
  EXPECT_NEAR(sw.q_atomic, 1.25, 1e-12);
}

TEST(Annulus, DisjointSpectrumGivesZero) {
  const Index N = 64;
  const auto mu = AtomicMeasure::from_atoms(TorusGrid(1, N), std::vector<Index>{0}).probability();
  AnnulusParams p;
  p.r = 1.0 / 16.0;
  const auto st = prepare_annulus(mu, p);
  // f̂ supported at the far side of the torus, away from the annulus around 0
  std::vector<Complex> f(st.W);
  const Index k = st.W / 2;
  for (Index x = 0; x < st.W; ++x) f[x] = std::polar(1.0, 2.0 * std::numbers::pi * double(x * k % st.W) / double(st.W));
  EXPECT_EQ(annulus_ratio(st, f, p.p, p.q), 0.0);
}

TEST(Annulus, HomogeneousInTestFunction) {
  const auto mu = random_probability(128, 11, 2);
  AnnulusParams p;
  p.r = 1.0 / 16.0;
  const auto st = prepare_annulus(mu, p);
  auto f = random_complex(static_cast<std::size_t>(st.W), 8);
  const double r1 = annulus_ratio(st, f, p.p, p.q);
  for (auto& z : f) z *= 37.5;
  EXPECT_NEAR(annulus_ratio(st, f, p.p, p.q), r1, 1e-12 * r1);
}

TEST(Annulus, SupportViolationRejected) {
  const auto mu = random_probability(64, 5, 2);
  AnnulusParams p;
  p.r = 1.0 / 8.0;
  p.eta = [](double t) { return t <= 1.0 ? 0.5 : 0.0; };
  EXPECT_THROW(prepare_annulus(mu, p), DomainError);
  p.eta = nullptr;
  p.r = 1.0 / 512.0;
  EXPECT_THROW(prepare_annulus(mu, p), ConfigurationError);
}

TEST(Annulus, DefaultProfileMeetsDerivativeBounds) {
  const auto mu = random_probability(64, 5, 2);
  AnnulusParams p;
  p.r = 1.0 / 8.0;
  p.oversample = 16;
  const auto st = prepare_annulus(mu, p);
  ASSERT_EQ(st.derivative_norms.size(), 3u);
  EXPECT_EQ(st.derivative_residual, 0.0);
  EXPECT_TRUE(st.order_ok);
}

TEST(Annulus, PointMassBoundedAcrossScales) {
  const auto mu = AtomicMeasure::delta(TorusGrid(1, 512));
  double lo = 1e300, hi = 0.0;
  ApOptions o;
  o.ambient = 2048;
  const auto ap = estimate_Ap(mu, 4.0 / 3.0, o);
  for (int j = 3; j <= 7; ++j) {
    AnnulusParams p;
    p.r = std::ldexp(1.0, -j);
    p.batch = 10;
    const auto rep = annulus_multiplier_check(mu, p, &ap);
    lo = std::min(lo, rep.max_ratio);
    hi = std::max(hi, rep.max_ratio);
  }
  EXPECT_LT(hi / lo, 2.0);
}

TEST(Annulus, RandomSparseStableAcrossScales) {
  const Index N = 512;
  const auto mu = random_probability(N, floor_power(N, 0.5), 9);
  ApOptions o;
  o.ambient = 4 * N;
  const auto ap = estimate_Ap(mu, 4.0 / 3.0, o);
  double lo = 1e300, hi = 0.0;
  for (int j = 3; j <= 7; ++j) {
    AnnulusParams p;
    p.r = std::ldexp(1.0, -j);
    p.q = 2.0;
    p.p = 4.0 / 3.0;
    p.batch = 50;
    const auto rep = annulus_multiplier_check(mu, p, &ap);
    lo = std::min(lo, rep.max_ratio);
    hi = std::max(hi, rep.max_ratio);
  }
  EXPECT_LE(hi / lo, 2.0);
}

TEST(Annulus, DecompositionReconstructs) {
  const auto mu = random_probability(128, 11, 3);
  AnnulusParams p;
  p.r = 1.0 / 16.0;
  p.batch = 1;
  p.decomposition = true;
  const auto rep = annulus_multiplier_check(mu, p);
  EXPECT_LT(rep.reconstruction_error, 1e-9);
  ASSERT_GE(rep.piece_sup.size(), 4u);
  EXPECT_LT(rep.piece_sup.back(), rep.piece_sup.front());
}

TEST(AdDiagnostic, PointMassIsLowerRegularWithGrowingBlocks) {
  const auto mu = AtomicMeasure::delta(TorusGrid(1, 256));
  const auto diag = ad_regularity_diagnostic(mu, 0.5, 1.0);
  EXPECT_TRUE(diag.lower_regular);
  EXPECT_FALSE(diag.blocks_decay);
  EXPECT_GT(diag.blocks.back().value, diag.blocks.front().value);
  EXPECT_TRUE(diag.consistent);
}

TEST(AdDiagnostic, LatticeCombFlagsDegenerateWindow) {
  const auto mu = AtomicMeasure::uniform(TorusGrid(1, 128));
  const auto diag = ad_regularity_diagnostic(mu, 1.0, 1.0);
  EXPECT_TRUE(diag.lower_regular);
  EXPECT_TRUE(diag.degenerate_window);
}

TEST(AdDiagnostic, CombVersusRandomBlocks) {
  const Index N = 1009;
  std::vector<Index> comb_atoms;
  for (Index k = 0; k < 31; ++k) comb_atoms.push_back(32 * k);
  const auto comb = AtomicMeasure::from_atoms(TorusGrid(1, N), comb_atoms).probability();
  const std::vector<double> rhos{8, 16, 32, 64, 128};
  const auto dc = ad_regularity_diagnostic(comb, 0.5, 0.0, rhos);
  // block sums agree with a direct oracle
  const auto spectrum = [&](const AtomicMeasure& mu, Index r) { return std::abs(oracle::dft1(mu.masses(), r)); };
  for (const auto& b : dc.blocks) {
    double s = 0.0;
    for (Index r = Index(b.rho); r <= Index(2 * b.rho); ++r) s += 2.0 * std::pow(spectrum(comb, r), 4);
    EXPECT_NEAR(b.value, std::pow(s, 0.25), 1e-9);
  }
  const auto random = random_probability(N, 31, 77);
  const auto dr = ad_regularity_diagnostic(random, 0.5, 0.0, rhos);
  EXPECT_GT(dc.blocks.back().value, 0.5);  // comb blocks recur
  // random blocks decay by at least 4x from ρ = 8 to ρ = 128
  EXPECT_LE(dr.blocks.back().value, dr.blocks.front().value / 4.0);
}

TEST(Endpoint, PointMassDivergesUniformConverges) {
  const auto delta = AtomicMeasure::delta(TorusGrid(1, 256));
  EXPECT_FALSE(endpoint_dyadic_sum(delta, 0.5).converges);
  const auto uniform = AtomicMeasure::uniform(TorusGrid(1, 256));
  const auto es = endpoint_dyadic_sum(uniform, 0.5);
  EXPECT_TRUE(es.converges);
  EXPECT_EQ(es.t.size(), 8u);
}

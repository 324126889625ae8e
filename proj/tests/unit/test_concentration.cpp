#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

#include "salemlab/concentration/concentration.hpp"
#include "salemlab/errors.hpp"

using namespace salemlab;

namespace {

using Rational = boost::multiprecision::cpp_rational;

// Exact Σ_{k=M}^m C(m,k) p^k and 2(mp)^M/M! with p taken as its exact binary value.
std::pair<Rational, Rational> rational_small_sum(std::int64_t m, double p, std::int64_t M) {
  const Rational pr(p);
  Rational tail = 0;
  Rational binom = 1;
  Rational pk = 1;
  for (std::int64_t k = 0; k <= m; ++k) {
    if (k > 0) {
      binom = binom * (m - k + 1) / k;
      pk *= pr;
    }
    if (k >= M) tail += binom * pk;
  }
  Rational bound = 2;
  for (std::int64_t k = 1; k <= M; ++k) bound = bound * (Rational(m) * pr) / k;
  return {tail, bound};
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace

TEST(Bounds, HoeffdingLargeExample) {
  EXPECT_NEAR(concentration_bound(BoundKind::hoeffding_large_t, {.A = 1, .delta = 1, .t = 2}), 2 * std::exp(-1.5),
              1e-15);
  EXPECT_NEAR(concentration_bound(BoundKind::hoeffding_large_t, {.A = 1, .delta = 1, .t = 2}), 0.44626, 5e-6);
}

TEST(Bounds, HoeffdingSmallAtZero) {
  EXPECT_DOUBLE_EQ(concentration_bound(BoundKind::hoeffding_small_t, {.A = 3, .delta = 0.5, .t = 0}), 2.0);
}

TEST(Bounds, WrongBranchNamesTheOtherOne) {
  try {
    concentration_bound(BoundKind::hoeffding_small_t, {.A = 1, .delta = 1, .t = 2});
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("hoeffding_large_t"), std::string::npos);
  }
  try {
    concentration_bound(BoundKind::hoeffding_large_t, {.A = 1, .delta = 1, .t = 0.5});
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("hoeffding_small_t"), std::string::npos);
  }
}

TEST(Bounds, BranchContinuityExact) {
  for (double A : {0.1, 1.0, 2.5, 7.0, 1e3})
    for (double delta : {0.01, 0.3, 1.0, 4.0}) {
      const auto c = hoeffding_branch_continuity(A, delta);
      EXPECT_TRUE(c.exact_match) << A << " " << delta;
      EXPECT_DOUBLE_EQ(c.small_exponent, -A * delta * delta / 2);
      const BoundParams q{.A = A, .delta = delta, .t = A * delta};
      EXPECT_NEAR(log_concentration_bound(BoundKind::hoeffding_small_t, q),
                  log_concentration_bound(BoundKind::hoeffding_large_t, q), 1e-12 * (1 + A * delta * delta));
    }
}

TEST(Bounds, AzumaAndBernstein) {
  EXPECT_NEAR(concentration_bound(BoundKind::azuma, {.A = 2, .t = 1}), 2 * std::exp(-0.25), 1e-15);
  EXPECT_NEAR(concentration_bound(BoundKind::bernstein, {.t = 0.3, .m = 100}), 4 * std::exp(-2.25), 1e-15);
  EXPECT_NEAR(concentration_bound(BoundKind::bernstein, {.t = 0.3, .m = 100}), 0.421597, 1e-6);
  EXPECT_THROW(concentration_bound(BoundKind::azuma, {.A = 0, .t = 1}), DomainError);
  EXPECT_THROW(concentration_bound(BoundKind::bernstein, {.t = -1, .m = 5}), DomainError);
}

TEST(Bounds, ParseRoundTrip) {
  for (auto k : {BoundKind::hoeffding_small_t, BoundKind::hoeffding_large_t, BoundKind::azuma, BoundKind::bernstein})
    EXPECT_EQ(parse_bound_kind(to_string(k)), k);
  EXPECT_THROW(parse_bound_kind("chernoff"), ConfigurationError);
}

TEST(Bounds, MartingaleA) {
  MartingaleSpec s{{1.0, 2.0, 0.5}, 1.0};
  EXPECT_DOUBLE_EQ(s.A(), 5.25);
}

TEST(SmallSummation, WorkedExample) {
  const auto r = small_summation(4, 0.1, 2);
  // C(4,2)/100 + C(4,3)/1000 + 1/10^4
  EXPECT_NEAR(r.tail, 0.0641, 1e-14);
  EXPECT_NEAR(r.bound, 0.16, 1e-14);
  EXPECT_TRUE(r.pass);
}

TEST(SmallSummation, MatchesRationalOracle) {
  for (std::int64_t m = 2; m <= 30; ++m)
    for (double p : {0.001, 0.01, 0.05, 0.1, 0.2, 0.3, 0.4})
      for (std::int64_t M = 1; M <= m; ++M) {
        if (2.0 * m * p > M) continue;
        const auto r = small_summation(m, p, M);
        const auto [tail, bound] = rational_small_sum(m, p, M);
        const double te = static_cast<double>(tail), be = static_cast<double>(bound);
        EXPECT_NEAR(r.tail, te, 1e-14 * te) << m << " " << p << " " << M;
        EXPECT_NEAR(r.bound, be, 1e-14 * be);
        EXPECT_EQ(r.pass, tail <= bound);
      }
}

TEST(SmallSummation, ExhaustiveGridHolds) {
  int checked = 0;
  for (std::int64_t m = 2; m <= 50; ++m)
    for (double p : {0.001, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.4})
      for (std::int64_t M = 1; M <= m; ++M) {
        if (2.0 * m * p > M) continue;
        EXPECT_TRUE(small_summation(m, p, M).pass) << m << " " << p << " " << M;
        ++checked;
      }
  EXPECT_GT(checked, 1000);
}

TEST(SmallSummation, Preconditions) {
  EXPECT_THROW(small_summation(10, 0.3, 5), DomainError);  // 2mp = 6 > 5
  EXPECT_THROW(small_summation(10, 0.1, 11), DomainError);
  EXPECT_THROW(small_summation(1, 0.1, 1), DomainError);
  EXPECT_THROW(small_summation(10, 1.0, 10), DomainError);
  EXPECT_THROW(small_summation(10, 0.0, 1), DomainError);
}

TEST(Mgf, TwoPointIsCosh) {
  for (double a : {0.25, 1.0, 3.0}) {
    const auto r = mgf_twopoint_check(a, linspace(-10, 10, 401));
    EXPECT_TRUE(r.pass) << a;
    EXPECT_GE(r.min_residual, -1e-12);
  }
  // residual vanishes at t = 0 only
  const auto z = mgf_twopoint_check(1.0, {0.0});
  EXPECT_NEAR(z.min_residual, 0.0, 1e-15);
  // cosh(t) vs e^{t²/2} at t = 1 directly
  const auto one = mgf_twopoint_check(1.0, {1.0});
  EXPECT_NEAR(one.min_residual, 1.0 - std::cosh(1.0) / std::exp(0.5), 1e-15);
}

TEST(Mgf, AsymmetricZeroMean) {
  const DiscreteDistribution X{{0.5, -1.0}, {2.0 / 3.0, 1.0 / 3.0}};
  const auto r = mgf_check(X, 1.0, linspace(-5, 5, 201));
  EXPECT_TRUE(r.pass);
  EXPECT_GE(r.min_residual, -1e-12);
}

TEST(Mgf, RejectsBadInputs) {
  EXPECT_THROW(mgf_check({{1.0, -0.5}, {0.5, 0.5}}, 1.0, {1.0}), DomainError);  // mean 0.25
  EXPECT_THROW(mgf_check({{2.0, -2.0}, {0.5, 0.5}}, 1.0, {1.0}), DomainError);  // |X| > a
  EXPECT_THROW(mgf_check({{1.0, -1.0}, {0.5, 0.4}}, 1.0, {1.0}), DomainError);
}

TEST(Wilson, KnownValues) {
  // 0 of n: upper = z²/(n+z²)
  const double z = 2.5758293035489;
  const auto w0 = wilson_interval(0, 1000);
  EXPECT_DOUBLE_EQ(w0.low, 0.0);
  EXPECT_NEAR(w0.high, z * z / (1000 + z * z), 1e-15);
  const auto wn = wilson_interval(1000, 1000);
  EXPECT_NEAR(wn.low, 1000 / (1000 + z * z), 1e-15);
  EXPECT_DOUBLE_EQ(wn.high, 1.0);
  const auto w = wilson_interval(50, 100);
  EXPECT_NEAR(w.low + w.high, 1.0, 1e-15);
}

TEST(MonteCarlo, RademacherBelowBernstein) {
  TailSpec s;
  s.kind = TailSpec::Kind::rademacher;
  s.m = 100;
  s.trials = 100000;
  s.seed = 7;
  const auto rows = monte_carlo_tail(s, {0.0, 0.1, 0.2, 0.3, 0.4});
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0].exceed, s.trials);
  EXPECT_DOUBLE_EQ(rows[0].bound, 4.0);
  // P(|S_100| >= 30) = 2 P(S >= 30), S = 2 Bin(100, 1/2) − 100
  Rational tail = 0, binom = 1;
  for (int k = 0; k <= 100; ++k) {
    if (k > 0) binom = binom * (101 - k) / k;
    if (2 * k - 100 >= 30) tail += binom;
  }
  const double exact = 2.0 * static_cast<double>(tail / boost::multiprecision::pow(boost::multiprecision::cpp_int(2), 100));
  // 2 Φ̄(3) ≈ 0.0027 ignores the lattice; the exact value is 0.00352
  EXPECT_NEAR(exact, 0.0035176, 1e-6);
  EXPECT_LE(rows[3].ci_low, exact);
  EXPECT_GE(rows[3].ci_high, exact);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.resolvable) << r.t;
    EXPECT_TRUE(r.pass) << r.t;
  }
}

TEST(MonteCarlo, DeterministicAcrossRuns) {
  TailSpec s;
  s.m = 50;
  s.trials = 5000;
  s.seed = 3;
  const auto a = monte_carlo_tail(s, {0.2});
  const auto b = monte_carlo_tail(s, {0.2});
  EXPECT_EQ(a[0].exceed, b[0].exceed);
}

TEST(MonteCarlo, CharacterSumsRarelyExceedDecayThreshold) {
  TailSpec s;
  s.kind = TailSpec::Kind::character;
  s.m = 31;
  s.N = 1009;
  s.u = 17;
  s.trials = 100000;
  s.seed = 11;
  // single-frequency threshold 4 sqrt(log(8 N^{d+1})) / sqrt(m), d = 1
  const double thr = 4.0 * std::sqrt(std::log(8.0 * 1009.0 * 1009.0)) / std::sqrt(31.0);
  const auto rows = monte_carlo_tail(s, {0.25, 0.5, thr});
  EXPECT_LE(rows[2].empirical, 1e-3);
  // the bound at thr is ~1e-27, beyond what 1e5 trials resolve
  EXPECT_FALSE(rows[2].resolvable);
  for (const auto& r : rows)
    if (r.resolvable) EXPECT_TRUE(r.pass) << r.t;
  EXPECT_TRUE(rows[0].resolvable && rows[1].resolvable);
}

TEST(MonteCarlo, Preconditions) {
  TailSpec s;
  s.trials = 999;
  EXPECT_THROW(monte_carlo_tail(s, {0.1}), DomainError);
  s.trials = 1000;
  s.kind = TailSpec::Kind::character;
  s.u = s.N;
  EXPECT_THROW(monte_carlo_tail(s, {0.1}), DomainError);
}

TEST(Factorial, WorkedExample) {
  EXPECT_EQ(factorial_min_n(1.0), 8);
  const auto r = factorial_ineq_check(1.0, 8);
  EXPECT_TRUE(r.admissible);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.log_lhs, -std::log(40320.0), 1e-12);
  EXPECT_FALSE(factorial_ineq_check(1.0, 7).admissible);
}

TEST(Factorial, SweepHolds) {
  for (int i = 0; i <= 396; ++i) {
    const double T = 1.0 + i * 0.25;
    const auto n0 = factorial_min_n(T);
    EXPECT_GE(static_cast<double>(n0), std::exp(2.0) * T);
    EXPECT_LT(static_cast<double>(n0 - 1), std::exp(2.0) * T);
    for (std::int64_t n = n0; n <= n0 + 10; ++n) {
      const auto r = factorial_ineq_check(T, n);
      EXPECT_TRUE(r.admissible);
      EXPECT_TRUE(r.pass) << T << " " << n;
    }
  }
}

TEST(Factorial, FailsOutsideHypothesisForSomeSmallN) {
  // n = 1, T = 1: 1 > e^{-1}; the gate keeps this from being a claim
  const auto r = factorial_ineq_check(1.0, 1);
  EXPECT_FALSE(r.admissible);
  EXPECT_FALSE(r.pass);
  EXPECT_THROW(factorial_ineq_check(0.5, 10), DomainError);
}

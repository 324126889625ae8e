#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace salemlab {

enum class BoundKind { hoeffding_small_t, hoeffding_large_t, azuma, bernstein };

BoundKind parse_bound_kind(const std::string& name);
std::string to_string(BoundKind kind);

// Bounded martingale with increment MGF bounds e^{a_j² λ²/2} for |λ| < δ.
struct MartingaleSpec {
  std::vector<double> a;
  double delta = 1.0;
  double A() const;  // Σ a_j²
};

struct BoundParams {
  double A = 1.0;      // hoeffding, azuma
  double delta = 1.0;  // hoeffding
  double t = 0.0;
  std::int64_t m = 1;  // bernstein
};

// Natural log of the tail bound; kinds with a t-range throw DomainError naming
// the branch that covers t. The small-t branch is closed at t = Aδ.
double log_concentration_bound(BoundKind kind, const BoundParams& params);
double concentration_bound(BoundKind kind, const BoundParams& params);

// Both hoeffding exponents at t = Aδ, evaluated in exact rational arithmetic.
struct BranchContinuity {
  double small_exponent = 0.0;
  double large_exponent = 0.0;
  bool exact_match = false;
};
BranchContinuity hoeffding_branch_continuity(double A, double delta);

// Σ_{k=M}^m C(m,k) p^k against 2(mp)^M/M!, in 50-digit binary floating point.
struct SmallSummation {
  double tail = 0.0;
  double bound = 0.0;
  double log_tail = 0.0;
  double log_bound = 0.0;
  bool pass = false;
};
SmallSummation small_summation(std::int64_t m, double p, std::int64_t M);

struct DiscreteDistribution {
  std::vector<double> values;
  std::vector<double> probs;
};

// min over t of e^{a²t²/2} − E e^{tX}, relative to max(1, e^{a²t²/2}).
struct MgfCheck {
  double min_residual = 0.0;
  double at_t = 0.0;
  bool pass = false;  // min_residual >= −1e−12
};
MgfCheck mgf_check(const DiscreteDistribution& X, double a, const std::vector<double>& ts);
MgfCheck mgf_twopoint_check(double a, const std::vector<double>& ts);

// Monte Carlo exceedance of |m^{−1} Σ X_j| >= M t, with a 99% Wilson interval,
// against the bound 4 e^{−m t²/4}.
struct TailSpec {
  enum class Kind { rademacher, character } kind = Kind::rademacher;
  std::int64_t m = 100;
  std::int64_t N = 1009;  // character: X_j = e^{−2πi u x_j / N}, x_j uniform on Z_N
  std::int64_t u = 1;
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
};

struct TailRow {
  double t = 0.0;
  std::int64_t exceed = 0;
  double empirical = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double bound = 0.0;
  bool pass = false;        // ci_high <= bound
  bool resolvable = false;  // Wilson upper at zero hits <= bound, so pass can hold
};
std::vector<TailRow> monte_carlo_tail(const TailSpec& spec, const std::vector<double>& ts);

struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
};
WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials, double z = 2.5758293035489);

// T^n/n! <= e^{−n} in log space. `pass` is computed for every n but only
// carries a claim when `admissible` (n >= e² T).
struct FactorialCheck {
  bool admissible = false;
  bool pass = false;
  double log_lhs = 0.0;
  double log_rhs = 0.0;
};
FactorialCheck factorial_ineq_check(double T, std::int64_t n);
std::int64_t factorial_min_n(double T);  // ⌈e² T⌉

}  // namespace salemlab

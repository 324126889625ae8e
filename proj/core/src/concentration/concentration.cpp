#include "salemlab/concentration/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "salemlab/errors.hpp"
#include "salemlab/parallel.hpp"
#include "salemlab/sampler/rng.hpp"

namespace salemlab {

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;
using Rational = boost::multiprecision::cpp_rational;

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

BoundKind parse_bound_kind(const std::string& name) {
  if (name == "hoeffding_small_t") return BoundKind::hoeffding_small_t;
  if (name == "hoeffding_large_t") return BoundKind::hoeffding_large_t;
  if (name == "azuma") return BoundKind::azuma;
  if (name == "bernstein") return BoundKind::bernstein;
  throw ConfigurationError("unknown bound kind '" + name + "'");
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::hoeffding_small_t: return "hoeffding_small_t";
    case BoundKind::hoeffding_large_t: return "hoeffding_large_t";
    case BoundKind::azuma: return "azuma";
    case BoundKind::bernstein: return "bernstein";
  }
  return "?";
}

double MartingaleSpec::A() const {
  double s = 0.0;
  for (double x : a) s += x * x;
  return s;
}

double log_concentration_bound(BoundKind kind, const BoundParams& q) {
  if (!(q.t >= 0.0) || !std::isfinite(q.t)) throw DomainError("t must be finite and >= 0");
  switch (kind) {
    case BoundKind::hoeffding_small_t:
    case BoundKind::hoeffding_large_t: {
      if (!(q.A > 0.0) || !(q.delta > 0.0)) throw DomainError("hoeffding needs A > 0 and delta > 0");
      const double edge = q.A * q.delta;
      if (kind == BoundKind::hoeffding_small_t) {
        if (q.t > edge)
          throw DomainError("t = " + fmt_double(q.t) + " exceeds A*delta = " + fmt_double(edge) +
                            "; use hoeffding_large_t");
        return std::numbers::ln2 - q.t * q.t / (2.0 * q.A);
      }
      if (q.t < edge)
        throw DomainError("t = " + fmt_double(q.t) + " is below A*delta = " + fmt_double(edge) +
                          "; use hoeffding_small_t");
      return std::numbers::ln2 + q.A * q.delta * q.delta / 2.0 - q.delta * q.t;
    }
    case BoundKind::azuma:
      if (!(q.A > 0.0)) throw DomainError("azuma needs A > 0");
      return std::numbers::ln2 - q.t * q.t / (2.0 * q.A);
    case BoundKind::bernstein:
      if (q.m < 1) throw DomainError("bernstein needs m >= 1");
      return 2.0 * std::numbers::ln2 - static_cast<double>(q.m) * q.t * q.t / 4.0;
  }
  throw DomainError("unknown bound kind");
}

double concentration_bound(BoundKind kind, const BoundParams& params) {
  return std::exp(log_concentration_bound(kind, params));
}

BranchContinuity hoeffding_branch_continuity(double A, double delta) {
  if (!(A > 0.0) || !(delta > 0.0)) throw DomainError("hoeffding needs A > 0 and delta > 0");
  const Rational a(A), dl(delta);
  const Rational t = a * dl;
  const Rational small = -(t * t) / (2 * a);
  const Rational large = a * dl * dl / 2 - dl * t;
  BranchContinuity out;
  out.small_exponent = static_cast<double>(small);
  out.large_exponent = static_cast<double>(large);
  out.exact_match = small == large;
  return out;
}

SmallSummation small_summation(std::int64_t m, double p, std::int64_t M) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("small summation needs 0 < p < 1");
  if (m < 2) throw DomainError("small summation needs m >= 2");
  if (M > m || 2.0 * static_cast<double>(m) * p > static_cast<double>(M))
    throw DomainError("small summation needs 2mp <= M <= m (m = " + std::to_string(m) + ", p = " + fmt_double(p) +
                      ", M = " + std::to_string(M) + ")");
  const Float50 pp(p);
  Float50 term = 1;  // C(m,k) p^k
  Float50 tail = 0;
  for (std::int64_t k = 1; k <= m; ++k) {
    term = term * Float50(m - k + 1) / Float50(k) * pp;
    if (k >= M) tail += term;
  }
  Float50 bound = 2;
  const Float50 mp = Float50(m) * pp;
  for (std::int64_t k = 1; k <= M; ++k) bound = bound * mp / Float50(k);

  SmallSummation out;
  out.tail = static_cast<double>(tail);
  out.bound = static_cast<double>(bound);
  out.log_tail = static_cast<double>(log(tail));
  out.log_bound = static_cast<double>(log(bound));
  out.pass = tail <= bound;
  return out;
}

MgfCheck mgf_check(const DiscreteDistribution& X, double a, const std::vector<double>& ts) {
  if (X.values.empty() || X.values.size() != X.probs.size())
    throw DomainError("distribution needs matching, nonempty values and probs");
  if (!(a > 0.0)) throw DomainError("mgf check needs a > 0");
  double total = 0.0, mean = 0.0, vmax = 0.0;
  for (std::size_t i = 0; i < X.values.size(); ++i) {
    if (!(X.probs[i] >= 0.0)) throw DomainError("probabilities must be >= 0");
    total += X.probs[i];
    mean += X.probs[i] * X.values[i];
    vmax = std::max(vmax, std::abs(X.values[i]));
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("probabilities must sum to 1");
  if (std::abs(mean) > 1e-12 * std::max(1.0, vmax))
    throw DomainError("mgf check needs a mean-zero variable (mean = " + fmt_double(mean) + ")");
  if (vmax > a * (1.0 + 1e-15)) throw DomainError("values must satisfy |X| <= a");

  MgfCheck out;
  out.min_residual = std::numeric_limits<double>::infinity();
  for (double t : ts) {
    // e^{a²t²/2} >= 1, so dividing by it is the relative residual.
    const double g = a * a * t * t / 2.0;
    double ratio = 0.0;
    for (std::size_t i = 0; i < X.values.size(); ++i) ratio += X.probs[i] * std::exp(t * X.values[i] - g);
    const double r = 1.0 - ratio;
    if (r < out.min_residual) {
      out.min_residual = r;
      out.at_t = t;
    }
  }
  out.pass = out.min_residual >= -1e-12;
  return out;
}

MgfCheck mgf_twopoint_check(double a, const std::vector<double>& ts) {
  return mgf_check(DiscreteDistribution{{a, -a}, {0.5, 0.5}}, a, ts);
}

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials, double z) {
  if (trials <= 0 || successes < 0 || successes > trials) throw DomainError("wilson interval needs 0 <= k <= n, n > 0");
  const double n = static_cast<double>(trials);
  const double ph = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (ph + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::vector<TailRow> monte_carlo_tail(const TailSpec& spec, const std::vector<double>& ts) {
  if (spec.trials < 1000) throw DomainError("monte carlo tail needs at least 1000 trials");
  if (spec.m < 1) throw DomainError("monte carlo tail needs m >= 1");
  if (spec.kind == TailSpec::Kind::character && (spec.N < 2 || spec.u % spec.N == 0))
    throw DomainError("character tail needs N >= 2 and u != 0 mod N");

  std::vector<double> means(static_cast<std::size_t>(spec.trials));
  parallel_for(spec.trials, [&](std::int64_t trial) {
    SplitMix64 rng(trial_seed(spec.seed, static_cast<std::uint64_t>(trial)));
    double mag = 0.0;
    if (spec.kind == TailSpec::Kind::rademacher) {
      std::int64_t s = 0;
      for (std::int64_t j = 0; j < spec.m; ++j) s += (rng.next() >> 63) ? 1 : -1;
      mag = static_cast<double>(std::abs(s)) / static_cast<double>(spec.m);
    } else {
      const auto N = static_cast<std::uint64_t>(spec.N);
      const auto u = static_cast<std::uint64_t>(((spec.u % spec.N) + spec.N) % spec.N);
      std::complex<double> s = 0.0;
      for (std::int64_t j = 0; j < spec.m; ++j) {
        const std::uint64_t x = rng.below(N);
        const double phase = -2.0 * std::numbers::pi * static_cast<double>((u * x) % N) / static_cast<double>(N);
        s += std::polar(1.0, phase);
      }
      mag = std::abs(s) / static_cast<double>(spec.m);
    }
    means[static_cast<std::size_t>(trial)] = mag;
  });
  std::sort(means.begin(), means.end());

  std::vector<TailRow> rows;
  rows.reserve(ts.size());
  for (double t : ts) {
    TailRow row;
    row.t = t;
    const double cut = t * (1.0 - 1e-12);  // |X_j| <= 1, so M = 1
    row.exceed = static_cast<std::int64_t>(means.end() - std::lower_bound(means.begin(), means.end(), cut));
    row.empirical = static_cast<double>(row.exceed) / static_cast<double>(spec.trials);
    const auto ci = wilson_interval(row.exceed, spec.trials);
    row.ci_low = ci.low;
    row.ci_high = ci.high;
    row.bound = concentration_bound(BoundKind::bernstein, BoundParams{.t = t, .m = spec.m});
    row.pass = row.ci_high <= row.bound;
    row.resolvable = wilson_interval(0, spec.trials).high <= row.bound;
    rows.push_back(row);
  }
  return rows;
}

std::int64_t factorial_min_n(double T) {
  if (!(T >= 1.0) || !std::isfinite(T)) throw DomainError("factorial inequality needs finite T >= 1");
  return static_cast<std::int64_t>(std::ceil(std::exp(2.0) * T));
}

FactorialCheck factorial_ineq_check(double T, std::int64_t n) {
  if (!(T >= 1.0) || !std::isfinite(T)) throw DomainError("factorial inequality needs finite T >= 1");
  if (n < 0) throw DomainError("factorial inequality needs n >= 0");
  FactorialCheck out;
  const double dn = static_cast<double>(n);
  out.admissible = dn >= std::exp(2.0) * T;
  out.log_lhs = dn * std::log(T) - std::lgamma(dn + 1.0);
  out.log_rhs = -dn;
  out.pass = out.log_lhs <= out.log_rhs;
  return out;
}

}  // namespace salemlab

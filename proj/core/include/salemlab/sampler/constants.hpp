#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <mutex>
#include <tuple>

namespace salemlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact table of the cube-regularity constants in dimension d:
//   M(0,ε,h) = 1,   M(ℓ,ε,h) = U(ε,h)·κ(ℓ,h),
//   U(ε,h)   = max{⌊e^{d+2}⌋, ⌈(2d+h+1)/ε⌉},
//   κ(ℓ,h)   = Σ_{q<ℓ} C(ℓ,q) M(q, d(1−q/ℓ), h+1).
// All values are integers when ε is rational. Thread-safe.
class RegularityConstants {
 public:
  explicit RegularityConstants(int d);

  int d() const { return d_; }

  // Public entry points check ℓ >= 0, h >= 1 and 0 < ε < d.
  BigInt M(int ell, const Rational& eps, int h);
  BigInt U(const Rational& eps, int h);
  BigInt kappa(int ell, int h);
  // Σ_{q<ℓ} C(ℓ,q) M(q, β(ℓ−q), h+1)
  BigInt kappa_tilde(int ell, const Rational& beta, int h);
  // Σ_{q<ℓ} C(ℓ,q) M(q, (d/2)(1−q/ℓ), h+1)
  BigInt kappa_hat(int ell, int h);

  // ε^{−1}(e^{d+3}ℓ²(h+ℓ))^ℓ, and whether M(ℓ,ε,h) lies below it
  // (compared in 50-digit binary floating point).
  double growth_bound(int ell, const Rational& eps, int h) const;
  bool within_growth_bound(int ell, const Rational& eps, int h);

  std::size_t memo_size() const;

 private:
  BigInt M_unchecked(int ell, const Rational& eps, int h);
  BigInt U_unchecked(const Rational& eps, int h);

  int d_;
  BigInt floor_exp_;  // ⌊e^{d+2}⌋
  mutable std::recursive_mutex mu_;
  std::map<std::tuple<int, Rational, int>, BigInt> memo_;
};

// One-shot evaluation of M(ℓ,ε,h) in dimension d.
BigInt constants_M(int ell, const Rational& eps, int h, int d);

// Binomial coefficient as a big integer.
BigInt binomial(int n, int k);

// ε given as a decimal such as 0.005 converted to an exact rational.
Rational rational_from_decimal(double value, int max_denominator_digits = 9);

double to_double(const BigInt& v);

}  // namespace salemlab

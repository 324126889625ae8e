#include "salemlab/sampler/constants.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "salemlab/errors.hpp"

namespace salemlab {

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

Float50 to_float(const Rational& r) {
  return Float50(boost::multiprecision::numerator(r)) / Float50(boost::multiprecision::denominator(r));
}

BigInt ceil_rational(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;
  if (q * den < num) q += 1;  // num > 0 here
  return q;
}

}  // namespace

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

double to_double(const BigInt& v) { return v.convert_to<double>(); }

Rational rational_from_decimal(double value, int max_denominator_digits) {
  BigInt den = 1;
  for (int i = 0; i < max_denominator_digits; ++i) den *= 10;
  const long double scaled = std::nearbyint(static_cast<long double>(value) * den.convert_to<long double>());
  return Rational(BigInt(static_cast<long long>(scaled)), den);
}

RegularityConstants::RegularityConstants(int d) : d_(d) {
  if (d < 1) throw DomainError("dimension must be >= 1");
  const Float50 e = boost::multiprecision::exp(Float50(d + 2));
  floor_exp_ = BigInt(boost::multiprecision::floor(e));
}

BigInt RegularityConstants::U_unchecked(const Rational& eps, int h) {
  const BigInt ratio = ceil_rational(Rational(2 * d_ + h + 1) / eps);
  return ratio > floor_exp_ ? ratio : floor_exp_;
}

BigInt RegularityConstants::M_unchecked(int ell, const Rational& eps, int h) {
  if (ell == 0) return 1;
  std::lock_guard<std::recursive_mutex> lock(mu_);
  const auto key = std::make_tuple(ell, eps, h);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  BigInt kap = 0;
  for (int q = 0; q < ell; ++q)
    kap += binomial(ell, q) * M_unchecked(q, Rational(d_) * (Rational(1) - Rational(q, ell)), h + 1);
  BigInt value = U_unchecked(eps, h) * kap;
  memo_.emplace(key, value);
  return value;
}

namespace {
void check_args(int ell, const Rational& eps, int h, int d) {
  if (ell < 0) throw DomainError("order ell must be >= 0");
  if (h < 1) throw DomainError("confidence exponent h must be >= 1");
  if (eps <= 0 || eps >= d) throw DomainError("epsilon must lie strictly between 0 and d");
}
}  // namespace

BigInt RegularityConstants::M(int ell, const Rational& eps, int h) {
  check_args(ell, eps, h, d_);
  return M_unchecked(ell, eps, h);
}

BigInt RegularityConstants::U(const Rational& eps, int h) {
  check_args(0, eps, h, d_);
  return U_unchecked(eps, h);
}

BigInt RegularityConstants::kappa(int ell, int h) {
  if (ell < 1) throw DomainError("kappa requires ell >= 1");
  if (h < 1) throw DomainError("confidence exponent h must be >= 1");
  BigInt kap = 0;
  for (int q = 0; q < ell; ++q)
    kap += binomial(ell, q) * M_unchecked(q, Rational(d_) * (Rational(1) - Rational(q, ell)), h + 1);
  return kap;
}

BigInt RegularityConstants::kappa_tilde(int ell, const Rational& beta, int h) {
  if (ell < 1) throw DomainError("kappa_tilde requires ell >= 1");
  if (beta <= 0) throw DomainError("beta must be positive");
  BigInt kap = 0;
  for (int q = 0; q < ell; ++q)
    kap += binomial(ell, q) * M_unchecked(q, beta * (ell - q), h + 1);
  return kap;
}

BigInt RegularityConstants::kappa_hat(int ell, int h) {
  if (ell < 1) throw DomainError("kappa_hat requires ell >= 1");
  BigInt kap = 0;
  for (int q = 0; q < ell; ++q)
    kap += binomial(ell, q) *
           M_unchecked(q, Rational(d_, 2) * (Rational(1) - Rational(q, ell)), h + 1);
  return kap;
}

double RegularityConstants::growth_bound(int ell, const Rational& eps, int h) const {
  const Float50 base = boost::multiprecision::exp(Float50(d_ + 3)) * ell * ell * (h + ell);
  const Float50 bound = boost::multiprecision::pow(base, ell) / to_float(eps);
  return bound.convert_to<double>();
}

bool RegularityConstants::within_growth_bound(int ell, const Rational& eps, int h) {
  const BigInt m = M(ell, eps, h);
  const Float50 base = boost::multiprecision::exp(Float50(d_ + 3)) * ell * ell * (h + ell);
  const Float50 bound = boost::multiprecision::pow(base, ell) / to_float(eps);
  return Float50(m) <= bound;
}

std::size_t RegularityConstants::memo_size() const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  return memo_.size();
}

BigInt constants_M(int ell, const Rational& eps, int h, int d) {
  RegularityConstants table(d);
  return table.M(ell, eps, h);
}

}  // namespace salemlab

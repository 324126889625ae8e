#include "salemlab/regularity/modulus.hpp"

#include <cmath>

#include "salemlab/errors.hpp"

namespace salemlab {

ModulusPsi::ModulusPsi(PsiVariant variant) : variant_(variant) {
  cutoff_ = variant == PsiVariant::inverse_loglog ? std::exp(-std::exp(1.0)) : std::exp(-1.0);
  if (variant == PsiVariant::constant) cutoff_ = 1.0;
}

ModulusPsi ModulusPsi::parse(const std::string& name) {
  if (name == "constant") return ModulusPsi(PsiVariant::constant);
  if (name == "exp-sqrt-log") return ModulusPsi(PsiVariant::exp_sqrt_log);
  if (name == "inverse-log") return ModulusPsi(PsiVariant::inverse_log);
  if (name == "inverse-loglog") return ModulusPsi(PsiVariant::inverse_loglog);
  throw ConfigurationError("unknown modulus '" + name +
                           "' (expected constant, exp-sqrt-log, inverse-log, inverse-loglog)");
}

std::string ModulusPsi::name() const {
  switch (variant_) {
    case PsiVariant::constant: return "constant";
    case PsiVariant::exp_sqrt_log: return "exp-sqrt-log";
    case PsiVariant::inverse_log: return "inverse-log";
    case PsiVariant::inverse_loglog: return "inverse-loglog";
  }
  return "?";
}

double ModulusPsi::operator()(double t) const {
  if (!(t > 0.0)) throw DomainError("modulus argument must be positive");
  const double s = std::min(t, cutoff_);
  switch (variant_) {
    case PsiVariant::constant: return 1.0;
    case PsiVariant::exp_sqrt_log: return std::exp(-std::sqrt(std::log(1.0 / s)));
    case PsiVariant::inverse_log: return 1.0 / std::log(1.0 / s);
    case PsiVariant::inverse_loglog: return 1.0 / std::log(std::log(1.0 / s));
  }
  return 1.0;
}

DoublingCheck psi_doubling_check(const ModulusPsi& psi, double t_min, double t_max) {
  if (!(t_min > 0.0) || t_min > t_max) throw DomainError("doubling scan needs 0 < t_min <= t_max");
  DoublingCheck out;
  out.constant = 0.0;
  for (double t = t_max; t / 2.0 >= t_min; t /= 2.0) {
    const double hi = psi(t), lo = psi(t / 2.0);
    if (lo > hi) out.pass = false;
    const double ratio = hi / lo;
    if (ratio > out.constant) {
      out.constant = ratio;
      out.at = t;
    }
  }
  if (!std::isfinite(out.constant)) out.pass = false;
  return out;
}

}  // namespace salemlab

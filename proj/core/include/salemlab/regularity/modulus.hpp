#pragma once

#include <string>

namespace salemlab {

enum class PsiVariant { constant, exp_sqrt_log, inverse_log, inverse_loglog };

// Modulus of continuity ψ: the small-t formula applies below `cutoff`
// (e^{−1}, or e^{−e} for inverse_loglog) and ψ is extended by its value at
// the cutoff above it, so ψ is nondecreasing and bounded on (0, ∞).
//   exp_sqrt_log:   exp(−(log 1/t)^{1/2})
//   inverse_log:    1 / log(1/t)
//   inverse_loglog: 1 / log log(1/t)
class ModulusPsi {
 public:
  explicit ModulusPsi(PsiVariant variant = PsiVariant::constant);

  static ModulusPsi parse(const std::string& name);

  PsiVariant variant() const { return variant_; }
  std::string name() const;
  double cutoff() const { return cutoff_; }

  // Throws DomainError for t <= 0.
  double operator()(double t) const;

 private:
  PsiVariant variant_;
  double cutoff_;
};

struct DoublingCheck {
  double constant = 1.0;  // max ψ(t)/ψ(t/2) over the dyadic scan
  double at = 1.0;        // t attaining it
  bool pass = true;       // constant finite and ψ nondecreasing on the scan
};

// Scans t = 2^{−j} from t_max down to t_min.
DoublingCheck psi_doubling_check(const ModulusPsi& psi, double t_min, double t_max = 1.0);

}  // namespace salemlab

#include "salemlab/sampler/certify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "salemlab/errors.hpp"
#include "salemlab/grid/convolution.hpp"
#include "salemlab/grid/cubes.hpp"
#include "salemlab/grid/dft.hpp"
#include "salemlab/sampler/increment.hpp"

namespace salemlab {

namespace {

constexpr double kSlack = 1e-12;
// e^{e^e}
const double kLogLogRegime = std::exp(std::exp(std::exp(1.0)));

double to_double(const Rational& r) { return r.convert_to<double>(); }

void stamp(EventReport& r, const Sample& s) {
  r.trial = s.trial;
  r.trial_seed = s.trial_seed;
}

OrderedJson cube_json(const Cube& q) {
  OrderedJson j;
  j["corner"] = q.corner;
  j["side"] = q.side;
  return j;
}

struct DecayMax {
  double value = 0.0;
  std::vector<Index> frequency;
};

DecayMax max_nonzero_frequency(const AtomicMeasure& sigma) {
  const Spectrum sp = dft(sigma);
  DecayMax best;
  Index arg = -1;
  for (Index k = 1; k < sp.size(); ++k) {
    const double v = std::abs(sp[k]);
    if (v > best.value) {
      best.value = v;
      arg = k;
    }
  }
  if (arg >= 0) best.frequency = sp.frequency(arg);
  return best;
}

}  // namespace

EventReport certify_fourier_decay(const AtomicMeasure& sigma, int h) {
  if (h < 1) throw DomainError("confidence exponent h must be >= 1");
  const auto m = sigma.total_count();
  if (m < 1) throw DomainError("Fourier decay needs m >= 1 atoms");
  const int d = sigma.d();
  const double logN = std::log(static_cast<double>(sigma.N()));
  EventReport r;
  r.event = "fourier_decay";
  r.certifies = "max_{r!=0} |mu_m^(r)| <= 4 sqrt(log(8 N^{d+h})) / sqrt(m)";
  r.threshold = 4.0 * std::sqrt(std::log(8.0) + (d + h) * logN) / std::sqrt(static_cast<double>(m));
  const DecayMax best = max_nonzero_frequency(sigma);
  r.observed = best.value / static_cast<double>(m);
  r.witness["frequency"] = best.frequency;
  r.extras["m"] = m;
  r.extras["h"] = h;
  r.decide();
  return r;
}

EventReport certify_cube_regularity(const Sample& sample, int ell, const CubeParams& params, int h,
                                    RegularityConstants* table) {
  if (ell < 0) throw DomainError("order ell must be >= 0");
  if (h < 1) throw DomainError("confidence exponent h must be >= 1");
  const TorusGrid& grid = sample.grid;
  const int d = grid.d();
  const Index N = grid.N();
  const double Nd = static_cast<double>(N);
  const std::int64_t m = sample.m();
  EventReport r;
  stamp(r, sample);
  r.extras["ell"] = ell;
  r.extras["m"] = m;

  if (params.mode == CubeMode::fixed) {
    const Rational& eps = params.eps;
    if (eps <= 0 || eps >= d) throw DomainError("epsilon must lie strictly between 0 and d");
    const double e = to_double(eps);
    if (ell > 0 && static_cast<double>(m) > std::pow(Nd, (d - e) / ell) * (1.0 + kSlack))
      throw DomainError("m = " + std::to_string(m) + " exceeds N^{(d-eps)/ell}");
    RegularityConstants local(d);
    RegularityConstants& tab = table ? *table : local;
    if (tab.d() != d) throw DomainError("constants table has the wrong dimension");
    r.event = "cube_regularity.fixed.l" + std::to_string(ell);
    r.certifies =
        "for all m' <= m and cubes |Q| <= m'^{-ell} N^{-eps}: sigma_{m'}^{*ell}(Q) <= M(ell,eps,h)";
    const BigInt M = tab.M(ell, eps, h);
    r.threshold = to_double(M);
    r.extras["eps"] = boost::multiprecision::numerator(eps).str() + "/" +
                      boost::multiprecision::denominator(eps).str();
    r.extras["M"] = M.str();

    auto side_for = [&](std::int64_t mp) {
      bool degenerate = false;
      const double bound = std::pow(static_cast<double>(mp), -ell) * std::pow(Nd, -e);
      const Index s = admissible_side(N, d, bound, &degenerate);
      return std::pair{s, degenerate};
    };
    PowerLadder ladder(grid, ell);
    r.observed = -1.0;
    std::int64_t evaluated = 0;
    for (std::int64_t mp = 1; mp <= m; ++mp) {
      ladder.push(sample.atoms[static_cast<std::size_t>(mp - 1)]);
      const auto [s, degenerate] = side_for(mp);
      // For a fixed side the statistic only grows with m', so the last m' of
      // each run of equal sides dominates the run.
      if (mp < m && (!params.all_prefixes || side_for(mp + 1).first == s)) continue;
      ++evaluated;
      const CubeMax cm = max_cube_mass(ladder.power(ell), s);
      if (static_cast<double>(cm.count) > r.observed) {
        r.observed = static_cast<double>(cm.count);
        r.witness = cube_json(cm.witness);
        r.witness["prefix"] = mp;
        r.witness["degenerate_side"] = degenerate;
      }
    }
    if (m == 0) {
      const auto [s, degenerate] = side_for(1);
      r.observed = ell == 0 ? 1.0 : 0.0;
      r.witness = cube_json(Cube{std::vector<Index>(static_cast<std::size_t>(d), 0), s});
      r.witness["degenerate_side"] = degenerate;
    }
    r.extras["prefixes_evaluated"] = evaluated;
    r.extras["all_prefixes"] = params.all_prefixes;
    r.decide();
    return r;
  }

  const double beta = params.beta;
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  if (ell < 1) throw DomainError("log mode requires ell >= 1");
  if (beta * ell > d * (1.0 + kSlack)) throw DomainError("log mode requires beta <= d/ell");
  if (m > floor_power(N, beta)) throw DomainError("log mode requires m <= N^beta");
  if (N <= 2 * static_cast<Index>(ell)) throw DomainError("log mode requires N > 2 ell");
  if (N < 3) throw DomainError("log mode requires N >= 3");
  r.event = "cube_regularity.log.l" + std::to_string(ell);
  r.certifies =
      "cubes |Q| <= N^{-beta ell}: sigma_m^{*ell}(Q) <= (beta ell)^{-1} (10^{d+1} ell^2 (ell+h))^ell "
      "log N / log log N";
  const double logN = std::log(Nd);
  const double scale = logN / std::log(logN);
  const double base = std::pow(10.0, d + 1) * ell * ell * (ell + h);
  r.threshold = std::pow(base, ell) / (beta * ell) * scale;
  bool degenerate = false;
  const Index s = admissible_side(N, d, std::pow(Nd, -beta * ell), &degenerate);
  const CubeMax cm = max_cube_mass(conv_power(sample.sigma(), ell), s);
  r.observed = static_cast<double>(cm.count);
  r.witness = cube_json(cm.witness);
  r.witness["degenerate_side"] = degenerate;
  r.extras["beta"] = beta;
  // Smallest constant C with observed <= C log N / log log N.
  r.extras["tightest_constant"] = r.observed / scale;
  if (Nd <= kLogLogRegime) {
    r.warnings.push_back("asymptotic-regime unverified: N <= e^{e^e}");
    r.hard = false;
  }
  r.decide();
  return r;
}

EventReport certify_point_mass(const AtomicMeasure& sigma, int ell, double B, int h, double M0) {
  if (ell < 1) throw DomainError("point-mass order must be >= 1");
  if (!(B > 0.0)) throw DomainError("B must be positive");
  if (sigma.denominator() != 1) throw DomainError("point-mass certifier expects integer counts");
  const TorusGrid& grid = sigma.grid();
  const double Nd = static_cast<double>(grid.N());
  const double logN = std::log(Nd);
  const std::int64_t m = sigma.total_count();
  const double range = std::pow(B * std::pow(Nd, grid.d()) * logN, 1.0 / ell);
  if (static_cast<double>(m) > range * (1.0 + kSlack))
    throw DomainError("m = " + std::to_string(m) + " exceeds (B N^d log N)^{1/ell}");
  EventReport r;
  r.event = "point_mass.l" + std::to_string(ell);
  r.certifies = "max_u sigma_m^{*ell}({u}) <= M0 log N";
  r.threshold = M0 * logN;
  const AtomicMeasure p = conv_power(sigma, ell);
  Index arg = 0;
  for (Index u = 1; u < grid.cell_count(); ++u)
    if (p.count(u) > p.count(arg)) arg = u;
  r.observed = static_cast<double>(p.count(arg));
  r.witness["point"] = grid.coords(arg);
  r.extras["ell"] = ell;
  r.extras["m"] = m;
  r.extras["B"] = B;
  r.extras["h"] = h;
  r.extras["M0"] = M0;
  r.decide();
  return r;
}

EventReport certify_uniformity(const Sample& sample, int ell, int kappa, int h, double C,
                               bool all_prefixes) {
  if (kappa < 1) throw DomainError("kappa must be >= 1");
  if (ell < kappa + 1) throw DomainError("uniformity requires ell >= kappa + 1");
  const TorusGrid& grid = sample.grid;
  const int d = grid.d();
  const Index N = grid.N();
  const double Nd = static_cast<double>(N);
  const double logN = std::log(Nd);
  const double NdPow = std::pow(Nd, d);
  const std::int64_t m = sample.m();
  if (m < 1) throw DomainError("uniformity needs m >= 1");
  if (static_cast<double>(m) > std::pow(NdPow * logN, 1.0 / (ell - kappa)) * (1.0 + kSlack))
    throw DomainError("m = " + std::to_string(m) + " exceeds (N^d log N)^{1/(ell-kappa)}");
  if (!factorial_coprime(N, ell)) throw DomainError("uniformity requires gcd(ell!, N) = 1");

  EventReport r;
  stamp(r, sample);
  r.event = "uniformity.l" + std::to_string(ell) + ".k" + std::to_string(kappa);
  r.certifies =
      "for all m' <= m: max_u |sigma_{m'}^{*ell}(u) - m'^ell N^{-d}| / (m'^ell N^{-d})^{1/2} <= "
      "C (log N)^{1+kappa/2}";
  r.threshold = C * std::pow(logN, 1.0 + kappa / 2.0);
  r.observed = -1.0;
  PowerLadder ladder(grid, ell);
  for (std::int64_t mp = 1; mp <= m; ++mp) {
    ladder.push(sample.atoms[static_cast<std::size_t>(mp - 1)]);
    if (!all_prefixes && mp < m) continue;
    const AtomicMeasure& p = ladder.power(ell);
    const double expect = std::pow(static_cast<double>(mp), ell) / NdPow;
    const double norm = std::sqrt(expect);
    for (Index u = 0; u < grid.cell_count(); ++u) {
      const double stat = std::abs(static_cast<double>(p.count(u)) - expect) / norm;
      if (stat > r.observed) {
        r.observed = stat;
        r.witness["point"] = grid.coords(u);
        r.witness["prefix"] = mp;
      }
    }
  }
  r.extras["ell"] = ell;
  r.extras["kappa"] = kappa;
  r.extras["m"] = m;
  r.extras["h"] = h;
  r.extras["C"] = C;
  r.extras["all_prefixes"] = all_prefixes;
  r.decide();
  return r;
}

std::vector<EventReport> certify_point_mass_configuration(const Sample& sample, double beta,
                                                          int max_order, const Calibration& cal) {
  const TorusGrid& grid = sample.grid;
  const int d = grid.d();
  const double Nd = static_cast<double>(grid.N());
  const double logN = std::log(Nd);
  const double NdPow = std::pow(Nd, d);
  const std::int64_t P = sample.m();
  if (P < 1) throw DomainError("configuration needs P >= 1 atoms");
  if (!(beta > 0.0) || beta >= d) throw DomainError("beta must lie in (0, d)");
  if (max_order < 2) throw DomainError("maximal order must be >= 2");
  std::vector<EventReport> out;

  {
    EventReport r;
    stamp(r, sample);
    r.event = "configuration.decay";
    r.certifies = "item (i): sup_{r!=0} |mu^(r)| <= C1 N^{-beta/2} (log N)^{1/2}";
    const DecayMax best = max_nonzero_frequency(sample.sigma());
    r.observed = best.value / static_cast<double>(P);
    r.threshold = cal.decay_C1 * std::pow(Nd, -beta / 2.0) * std::sqrt(logN);
    r.witness["frequency"] = best.frequency;
    r.decide();
    out.push_back(std::move(r));
  }

  const AtomicMeasure sigma = sample.sigma();
  AtomicMeasure power = AtomicMeasure::delta(grid);
  const double ratio = d / beta;
  for (int ell = 1; ell <= max_order; ++ell) {
    power = convolve(power, sigma);
    const double Pl = std::pow(static_cast<double>(P), ell);
    if (ell <= ratio * (1.0 + kSlack)) {
      EventReport r;
      stamp(r, sample);
      r.event = "configuration.multiplicity.l" + std::to_string(ell);
      r.certifies = "item (ii): mu^{*ell}(Q) <= C2 N^{-ell beta} log N for |Q| <= N^{-ell beta}";
      const double bound = std::pow(Nd, -ell * beta);
      bool degenerate = false;
      const Index s = admissible_side(grid.N(), d, bound, &degenerate);
      const CubeMax cm = max_cube_mass(power, s);
      r.observed = static_cast<double>(cm.count) / Pl;
      r.threshold = cal.multiplicity_C2 * bound * logN;
      r.witness = cube_json(cm.witness);
      r.witness["degenerate_side"] = degenerate;
      r.extras["ell"] = ell;
      r.decide();
      out.push_back(std::move(r));
    }
    if (ell >= ratio * (1.0 - kSlack)) {
      EventReport r;
      stamp(r, sample);
      r.event = "configuration.uniform.l" + std::to_string(ell);
      r.certifies =
          "item (iii): max_u |mu^{*ell}(u) - N^{-d}| <= C3 N^{-d} (log N)^{(ell+1)/2} "
          "N^{-(ell beta - d)/2}";
      Index arg = 0;
      double worst = -1.0;
      for (Index u = 0; u < grid.cell_count(); ++u) {
        const double dev = std::abs(static_cast<double>(power.count(u)) / Pl - 1.0 / NdPow);
        if (dev > worst) {
          worst = dev;
          arg = u;
        }
      }
      r.observed = worst;
      r.threshold = cal.uniform_C3 / NdPow * std::pow(logN, (ell + 1) / 2.0) /
                    std::pow(Nd, (ell * beta - d) / 2.0);
      r.witness["point"] = grid.coords(arg);
      r.extras["ell"] = ell;
      r.decide();
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace salemlab

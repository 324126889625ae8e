// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.
// Criteria backed by an experiment kind run the preset configs in
// tools/presets/acceptance through the same code path as `salemlab run`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "config.hpp"
#include "experiments.hpp"
#include "salemlab/grid/convolution.hpp"
#include "salemlab/grid/cubes.hpp"
#include "salemlab/grid/dft.hpp"
#include "salemlab/parallel.hpp"
#include "salemlab/restriction/restriction.hpp"
#include "salemlab/sampler/constants.hpp"
#include "salemlab/sampler/rng.hpp"
#include "salemlab/sampler/sample.hpp"
#include "salemlab/transference/transference.hpp"

using namespace salemlab;
using salemlab::cli::ExperimentConfig;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---- preset runs, cached so criterion 11 can compare reruns ----

std::map<std::string, std::string> g_jsonl;

std::vector<EventReport> run_preset(const std::string& name) {
  const ExperimentConfig cfg = cli::load_config(std::string(SALEMLAB_PRESET_DIR) + "/" + name + ".json");
  auto out = cli::run_experiment(cfg, default_calibration());
  g_jsonl[name] = to_jsonl(out.reports);
  return std::move(out.reports);
}

std::vector<const EventReport*> select(const std::vector<EventReport>& rs, const std::string& prefix) {
  std::vector<const EventReport*> out;
  for (const auto& r : rs)
    if (r.event.rfind(prefix, 0) == 0) out.push_back(&r);
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  double e = 0.0;
  for (Index i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

// ---- 1 ----

Outcome exact_identities() {
  double worst = 0.0;
  int cases = 0;
  auto track = [&](double r) {
    worst = std::max(worst, r);
    ++cases;
  };
  for (int d : {1, 2}) {
    for (Index N : {4, 8, 16}) {
      for (Index R : d == 1 ? std::vector<Index>{4 * N, 1024} : std::vector<Index>{4 * N, 128}) {
        const GridFunction box = box_kernel(d, N, R);
        const AtomicMeasure comb = lattice_comb(d, N);
        GridFunction power = box;
        for (int ell = 1; ell <= 3; ++ell) {
          if (ell > 1) power = convolve(power, box);
          track(max_abs_diff(convolve(power, comb), GridFunction::constant(d, R, 1.0)));
        }
        // comb spectrum is the indicator of N-multiples, box cells give a sinc product
        const Spectrum tc = dft(comb, R);
        const Spectrum bc = cell_spectrum(box);
        double e2 = 0.0, e3 = 0.0;
        for (Index k = 0; k < tc.size(); ++k) {
          const auto r = tc.frequency(k);
          bool lattice = true;
          double sinc = 1.0;
          for (Index x : r) {
            lattice = lattice && wrap(x, N) == 0;
            if (x != 0) {
              const double t = std::numbers::pi * double(x) / double(N);
              sinc *= std::sin(t) / t;
            }
          }
          e2 = std::max(e2, std::abs(tc[k] - Complex(lattice ? 1.0 : 0.0)));
          e3 = std::max(e3, std::abs(bc[k] - Complex(sinc)));
        }
        track(e2);
        track(e3);
      }
    }
  }

  // periodization: multiplicative, spectrum on the p-sublattice
  SplitMix64 rng(41);
  for (int d : {1, 2}) {
    const Index R = d == 1 ? 96 : 24, p = 5;
    GridFunction f(d, R), h(d, R);
    for (Index i = 0; i < f.size(); ++i) {
      f.values_mut()[static_cast<std::size_t>(i)] = rng.unit();
      h.values_mut()[static_cast<std::size_t>(i)] = rng.unit();
    }
    track(max_abs_diff(periodize(multiply(f, h), p), multiply(periodize(f, p), periodize(h, p))));
    const Spectrum sf = dft(f), sp = dft(periodize(f, p));
    double e = 0.0;
    for (Index k = 0; k < sp.size(); ++k) {
      auto r = sp.frequency(k);
      const bool on = std::all_of(r.begin(), r.end(), [&](Index x) { return wrap(x, p) == 0; });
      if (on) {
        for (auto& x : r) x /= p;
        e = std::max(e, std::abs(sp[k] - sf.at(r)));
      } else {
        e = std::max(e, std::abs(sp[k]));
      }
    }
    track(e);
  }

  // (G1 P1)*(G2 P2) = (G1*G2)(P1*P2) and the F_m separation for windowed P
  auto random_poly = [&](Index R, Index width) {
    std::vector<std::pair<Index, Complex>> terms;
    for (Index r = 0; r <= width; ++r) {
      const Complex c(2 * rng.unit() - 1, r == 0 ? 0.0 : 2 * rng.unit() - 1);
      terms.push_back({r, c});
      if (r) terms.push_back({-r, std::conj(c)});
    }
    return trig_polynomial_1d(R, terms);
  };
  {
    const Index p = 7, R = 7 * 20;
    auto random_g = [&] {
      GridFunction g(1, R / p);
      for (Index i = 0; i < g.size(); ++i) g.values_mut()[static_cast<std::size_t>(i)] = 0.5 + rng.unit();
      return periodize(g, p);
    };
    const GridFunction G1 = random_g(), G2 = random_g(), P1 = random_poly(R, 3), P2 = random_poly(R, 3);
    track(max_abs_diff(convolve(multiply(G1, P1), multiply(G2, P2)), multiply(convolve(G1, G2), convolve(P1, P2))));
  }
  {
    const FmParams fp{5, 2, 0.5, 0.6, 3};
    SampleConfig sc{TorusGrid(1, 25)};
    sc.atom_count = 6;
    sc.seed = 43;
    const AtomicMeasure mu = sample_points(sc, 0).sigma().probability();
    const FmBuild b = build_F_m(mu, fp, fm_resolution(fp, 1, 2));
    const Index R = b.F.R();
    const GridFunction P1 = random_poly(R, fp.m), P2 = random_poly(R, fp.m), P3 = random_poly(R, fp.m);
    const GridFunction l2 = convolve(multiply(b.F, P1), multiply(b.F, P2));
    track(max_abs_diff(l2, multiply(conv_power(b.F, 2), convolve(P1, P2))));
    const GridFunction l3 = convolve(l2, multiply(b.F, P3));
    track(max_abs_diff(l3, multiply(conv_power(b.F, 3), convolve(convolve(P1, P2), P3))));
  }
  return {worst <= 1e-8, "max residual " + fmt("%.2e", worst) + " over " + std::to_string(cases) + " checks"};
}

// ---- 2 ----

// Both sides of the restriction inequality by direct summation.
std::pair<double, double> direct_restriction(const AtomicMeasure& mu, const std::vector<Complex>& g, int n) {
  const TorusGrid& grid = mu.grid();
  const Index cells = grid.cell_count();
  const int d = grid.d();
  const auto supp = mu.support();
  double lhs = 0.0;
  std::vector<Index> xi(d), u(d);
  for (Index k = 0; k < cells; ++k) {
    grid.coords(k, xi);
    Complex s = 0.0;
    for (Index a : supp) {
      grid.coords(a, u);
      Index phase = 0;
      for (int i = 0; i < d; ++i) phase += xi[i] * u[i];
      const double th = -2.0 * std::numbers::pi * double(wrap(phase, grid.N())) / double(grid.N());
      s += g[static_cast<std::size_t>(a)] * mu.mass(a) * Complex(std::cos(th), std::sin(th));
    }
    lhs += std::pow(std::norm(s), n);
  }
  // μ^{*n} by repeated dense-by-sparse convolution
  std::vector<double> pw(static_cast<std::size_t>(cells), 0.0);
  pw[0] = 1.0;
  for (int step = 0; step < n; ++step) {
    std::vector<double> next(pw.size(), 0.0);
    for (Index x = 0; x < cells; ++x) {
      if (pw[x] == 0.0) continue;
      for (Index a : supp) next[static_cast<std::size_t>(grid.add(x, a))] += pw[x] * mu.mass(a);
    }
    pw.swap(next);
  }
  double l2 = 0.0;
  for (Index a : supp) l2 += std::norm(g[static_cast<std::size_t>(a)]) * mu.mass(a);
  const double rhs = double(cells) * *std::max_element(pw.begin(), pw.end()) * std::pow(l2, n);
  return {lhs, rhs};
}

Outcome restriction_suite() {
  struct Case {
    int d;
    Index N;
    int instances;
  };
  const std::vector<Case> cases{{1, 32, 100}, {1, 64, 100}, {1, 128, 100}, {2, 32, 20}};
  double worst_ratio = 0.0, worst_oracle = 0.0;
  std::int64_t checks = 0, oracle_checks = 0;
  for (const auto& c : cases) {
    SampleConfig sc{TorusGrid(c.d, c.N)};
    sc.seed = 20240602 + static_cast<std::uint64_t>(c.N * c.d);
    for (int i = 0; i < c.instances; ++i) {
      const std::uint64_t s = trial_seed(sc.seed, static_cast<std::uint64_t>(i));
      SplitMix64 rng(s);
      // atom count varies per instance between 2 and 2 N^{d/2}
      sc.atom_count = 2 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(2 * floor_power(c.N, c.d / 2.0) - 1)));
      const AtomicMeasure mu = sample_points(sc, i).sigma().probability();
      std::vector<Complex> g(static_cast<std::size_t>(mu.grid().cell_count()));
      for (auto& z : g) {
        const double re = 2 * rng.unit() - 1;
        z = Complex(re, 2 * rng.unit() - 1);
      }
      for (int n : {2, 3}) {
        const RestrictionResult r = restriction_check(mu, g, n);
        worst_ratio = std::max(worst_ratio, r.ratio);
        ++checks;
        if (c.N <= 64) {
          const auto [lhs, rhs] = direct_restriction(mu, g, n);
          worst_oracle = std::max({worst_oracle, std::abs(r.lhs - lhs) / std::max(1.0, lhs),
                                   std::abs(r.rhs - rhs) / std::max(1.0, rhs)});
          ++oracle_checks;
        }
      }
    }
  }
  return {worst_ratio <= 1.0 + 1e-9 && worst_oracle <= 1e-9,
          "max ratio " + fmt("%.12f", worst_ratio) + " over " + std::to_string(checks) + " instances, oracle gap " +
              fmt("%.1e", worst_oracle) + " over " + std::to_string(oracle_checks)};
}

// ---- 3 ----

Outcome fourier_decay() {
  const auto rs = run_preset("fourier_decay");
  const auto dec = select(rs, "fourier_decay");
  std::int64_t passes = 0;
  double worst = 0.0;
  for (const auto* r : dec) {
    passes += r->pass;
    worst = std::max(worst, r->ratio());
  }
  return {dec.size() == 200 && passes >= 199, std::to_string(passes) + "/" + std::to_string(dec.size()) +
                                                   " trials pass, worst observed/threshold " + fmt("%.3f", worst)};
}

// ---- 4 ----

Outcome cube_regularity() {
  const auto rs = run_preset("cube_regularity");
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> tally;
  bool all = true;
  for (const auto& r : rs) {
    auto& [p, n] = tally[r.event];
    p += r.pass;
    ++n;
    all = all && r.pass;
  }
  std::string detail;
  for (const auto& [ev, pn] : tally) detail += ev + " " + std::to_string(pn.first) + "/" + std::to_string(pn.second) + ", ";

  // max_cube_mass against every corner and side by brute force
  std::int64_t mismatches = 0, brute_cases = 0;
  for (int d : {1, 2}) {
    for (Index N : d == 1 ? std::vector<Index>{16, 31, 32} : std::vector<Index>{8, 16, 17}) {
      SampleConfig sc{TorusGrid(d, N)};
      sc.atom_count = d == 1 ? 6 : 10;
      sc.seed = 20240614;
      for (int ell : {1, 2}) {
        const AtomicMeasure p = conv_power(sample_points(sc, ell).sigma(), ell);
        for (Index side = 1; side <= N; ++side) {
          std::int64_t best = 0;
          std::vector<Index> corner(d), x(d);
          for (Index c = 0; c < p.grid().cell_count(); ++c) {
            p.grid().coords(c, corner);
            std::int64_t s = 0;
            const Index cube_cells = d == 1 ? side : side * side;
            for (Index o = 0; o < cube_cells; ++o) {
              x[0] = corner[0] + (d == 1 ? o : o / side);
              if (d == 2) x[1] = corner[1] + o % side;
              s += p.count(p.grid().index(x));
            }
            best = std::max(best, s);
          }
          mismatches += max_cube_mass(p, side).count != best;
          ++brute_cases;
        }
      }
    }
  }
  detail += "brute-force cube maxima " + std::to_string(brute_cases - mismatches) + "/" + std::to_string(brute_cases);
  return {all && mismatches == 0, detail};
}

// ---- 5 ----

Outcome uniformity() {
  const auto big = run_preset("uniformity_509");
  const auto small = run_preset("uniformity_251");
  bool all = default_calibration().uniformity_C == 20.0;
  std::vector<double> sb, ss;
  for (const auto& r : big) {
    all = all && r.pass && std::abs(r.threshold - 20.0 * std::pow(std::log(509.0), 1.5)) < 1e-9;
    sb.push_back(r.observed);
  }
  for (const auto& r : small) ss.push_back(r.observed);
  // median at 509 against the 251 median carried along (log N)^{3/2}
  const double scaled = median(ss) * std::pow(std::log(509.0) / std::log(251.0), 1.5);
  const double trend = median(sb) / scaled;
  const bool in_band = trend >= 0.1 && trend <= 10.0;
  return {all && sb.size() == 50 && in_band,
          "N=509 all " + std::to_string(sb.size()) + " trials <= 20 (log N)^{3/2}; median " + fmt("%.2f", median(sb)) +
              " vs scaled N=251 median " + fmt("%.2f", scaled) + " (ratio " + fmt("%.3f", trend) + ")"};
}

// ---- 6 ----

Outcome constants_growth() {
  int ok = 0, total = 0;
  for (int d = 1; d <= 3; ++d) {
    RegularityConstants t(d);
    for (int ell = 0; ell <= 5; ++ell)
      for (int h = 1; h <= 3; ++h)
        for (int k = 1; k <= 9; ++k) {
          ok += t.within_growth_bound(ell, Rational(k, 10), h);
          ++total;
        }
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " grid points within the growth bound"};
}

// ---- 7 ----

Outcome concentration() {
  const auto rs = run_preset("concentration");
  bool all = true;
  int resolvable = 0, unresolvable = 0;
  double worst_unres = 0.0;
  for (const auto& r : rs) {
    if (r.event.rfind("concentration.mc.", 0) == 0 && !r.hard) {
      // bound below Monte Carlo resolution: gate the raw exceedance instead
      const double emp = r.extras["empirical"].get<double>();
      worst_unres = std::max(worst_unres, emp);
      all = all && emp <= 1e-3;
      ++unresolvable;
      continue;
    }
    if (r.event.rfind("concentration.mc.", 0) == 0) ++resolvable;
    all = all && r.pass;
  }
  const auto ss = select(rs, "concentration.small_summation");
  return {all && resolvable > 0,
          std::to_string(resolvable) + " tail rows under bound at 99% CI, " + std::to_string(unresolvable) +
              " unresolvable rows with exceedance " + fmt("%.1e", worst_unres) + ", small-summation cases " +
              std::to_string(ss.front()->extras["cases"].get<std::int64_t>())};
}

// ---- 8 ----

Outcome transference() {
  const auto rs = run_preset("transfer");
  bool all = true;
  int gated = 0;
  std::string reported;
  for (const auto& r : rs) {
    const bool named = r.event == "fm.mean" || r.event == "fm.support" || r.event.rfind("fm.rectangles.", 0) == 0;
    if (named) {
      all = all && r.pass;
      ++gated;
    } else if (!r.pass && reported.find(r.event) == std::string::npos) {
      reported += " " + r.event;
    }
  }
  return {all && gated > 0, std::to_string(gated) + " mean/support/rectangle reports pass" +
                                (reported.empty() ? "" : "; outside this criterion, failing:" + reported)};
}

// ---- 9 ----

Outcome approx_trend() {
  const auto rs = run_preset("approx_step");
  bool finite = true;
  for (const auto* r : select(rs, "approx.m")) finite = finite && r->pass;
  const auto trend = select(rs, "approx.trend").front();
  std::string means;
  for (const auto& v : trend->extras["mean_weighted_fourier"]) means += fmt("%.4f ", v.get<double>());
  return {finite && trend->pass, std::string(finite ? "all components finite" : "non-finite component") +
                                     "; mean weighted-Fourier over m=5,7,11: " + means};
}

// ---- 10 ----

Outcome dichotomy() {
  const auto rs = run_preset("dichotomy");
  const auto* d = select(rs, "blocks.dichotomy").front();
  const double comb = d->extras["comb_max"].get<double>(), random = d->extras["mean_random_max"].get<double>();
  return {d->pass, "comb max B_rho " + fmt("%.3f", comb) + ", random mean max " + fmt("%.3f", random) + ", ratio " +
                       fmt("%.2f", comb / random) + " (needs > 4)"};
}

// ---- 11 ----

Outcome determinism() {
  const std::map<std::string, std::string> first = g_jsonl;
  int same = 0, total = 0;
  std::string differing;
  for (int workers : {1, 4}) {
    set_worker_count(workers);
    for (const auto& [name, jsonl] : first) {
      run_preset(name);
      ++total;
      if (g_jsonl[name] == jsonl)
        ++same;
      else
        differing += " " + name + "@" + std::to_string(workers);
    }
  }
  set_worker_count(0);
  return {total > 0 && same == total, std::to_string(same) + "/" + std::to_string(total) +
                                          " preset reruns byte-identical at 1 and 4 workers" + differing};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exact identities", 10, exact_identities},
      {2, "discrete restriction inequality", 60, restriction_suite},
      {3, "Fourier decay certification", 60, fourier_decay},
      {4, "cube regularity", 60, cube_regularity},
      {5, "uniformity statistic", 300, uniformity},
      {6, "constants recursion growth", 1, constants_growth},
      {7, "concentration suite", 120, concentration},
      {8, "transference properties", 120, transference},
      {9, "approximation-step trend", 120, approx_trend},
      {10, "AD-regularity dichotomy", 60, dichotomy},
      {11, "determinism", 0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.budget_s <= 0 || s < c.budget_s;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("%s %2d %s: %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(), s,
                in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

#include "salemlab/restriction/restriction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <numbers>

#include "salemlab/errors.hpp"
#include "salemlab/grid/convolution.hpp"
#include "salemlab/grid/fft.hpp"
#include "salemlab/parallel.hpp"
#include "salemlab/sampler/rng.hpp"

namespace salemlab {

namespace {

using CVec = std::vector<Complex>;

Index ipow(Index b, int e) {
  Index r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

double max_power_mass(const AtomicMeasure& mu, int n) {
  const AtomicMeasure power = conv_power(mu, n);
  return static_cast<double>(power.max_count()) / static_cast<double>(power.denominator());
}

double lp_norm(std::span<const Complex> f, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& z : f) m = std::max(m, std::abs(z));
    return m;
  }
  long double s = 0.0L;
  for (const auto& z : f) s += std::pow(static_cast<long double>(std::abs(z)), static_cast<long double>(p));
  return static_cast<double>(std::pow(s, 1.0L / static_cast<long double>(p)));
}

// Flat index in Z_W^d of the frequency carrying atom u of Γ_N^d.
std::vector<Index> embedded_atoms(const AtomicMeasure& mu, Index W) {
  const int d = mu.d();
  const Index s = W / mu.N();
  std::vector<Index> out;
  std::vector<Index> c(static_cast<std::size_t>(d));
  for (Index u : mu.support()) {
    unflatten(u, mu.N(), c);
    for (Index& x : c) x *= s;
    out.push_back(flat_index(c, W));
  }
  return out;
}

struct Embedded {
  int d;
  Index W;
  std::vector<Index> at;
  std::vector<double> mass;
};

Embedded embed(const AtomicMeasure& mu, Index W) {
  if (W % mu.N() != 0)
    throw ConfigurationError("ambient size " + std::to_string(W) + " is not a multiple of N = " +
                             std::to_string(mu.N()));
  checked_cell_count(mu.d(), W);
  Embedded e{mu.d(), W, embedded_atoms(mu, W), {}};
  for (Index u : mu.support()) e.mass.push_back(mu.mass(u));
  return e;
}

double functional(const Embedded& e, const CVec& F) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < e.at.size(); ++i) s += e.mass[i] * std::norm(F[static_cast<std::size_t>(e.at[i])]);
  return static_cast<double>(s);
}

double ratio_of(const Embedded& e, const CVec& f, double p) {
  CVec F = f;
  fft_inplace(F, e.d, e.W, FftSign::forward);
  const double np = lp_norm(f, p);
  if (np == 0.0) throw DomainError("test function has zero norm");
  return std::sqrt(functional(e, F)) / np;
}

struct Ascent {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Nonlinear power iteration: f <- dual_{p'}(R* R f). The functional is convex,
// so each step does not decrease the ratio.
Ascent ascend(const Embedded& e, CVec f, double p, const ApOptions& opts) {
  const double pd = p / (p - 1.0);
  Ascent a;
  double prev = ratio_of(e, f, p);
  a.value = prev;
  CVec F(f.size()), Z(f.size());
  for (int it = 0; it < opts.max_iter; ++it) {
    F = f;
    fft_inplace(F, e.d, e.W, FftSign::forward);
    std::fill(Z.begin(), Z.end(), Complex(0.0));
    for (std::size_t i = 0; i < e.at.size(); ++i) {
      const auto k = static_cast<std::size_t>(e.at[i]);
      Z[k] = e.mass[i] * F[k];
    }
    fft_inplace(Z, e.d, e.W, FftSign::inverse);
    double zmax = 0.0;
    for (const auto& z : Z) zmax = std::max(zmax, std::abs(z));
    if (zmax == 0.0) break;
    for (std::size_t x = 0; x < f.size(); ++x) {
      const double r = std::abs(Z[x]) / zmax;
      f[x] = r == 0.0 ? Complex(0.0) : std::polar(std::pow(r, pd - 1.0), std::arg(Z[x]));
    }
    const double cur = ratio_of(e, f, p);
    a.iterations = it + 1;
    a.value = std::max(a.value, cur);
    if (cur - prev <= opts.tol * std::max(1.0, cur)) {
      a.converged = true;
      break;
    }
    prev = cur;
  }
  return a;
}

double uniform01(SplitMix64& g) { return static_cast<double>(g.next() >> 11) * 0x1.0p-53; }

double norm_of(std::span<const Index> c) {
  double s = 0.0;
  for (Index x : c) s += static_cast<double>(x) * static_cast<double>(x);
  return std::sqrt(s);
}

// Radius of the ball with volume h^d.
double cell_ball_radius(int d, double h) {
  return h * std::pow(std::tgamma(d / 2.0 + 1.0), 1.0 / d) / std::sqrt(std::numbers::pi);
}

// C^3 step: 0 for t <= 0, 1 for t >= 1.
double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * t * (35.0 - 84.0 * t + 70.0 * t * t - 20.0 * t * t * t);
}

double cutoff_phi(double y) {
  const double a = std::abs(y);
  if (a <= 0.5) return 1.0;
  return smoothstep(2.0 * (1.0 - a));
}

std::function<double(double)> default_eta(int n_der) {
  const int K = n_der + 2;
  auto base = [K](double t) {
    const double u = (t - 0.625) / 0.375;
    return std::abs(u) < 1.0 ? std::pow(1.0 - u * u, K) : 0.0;
  };
  // scale so that sup |η^{(j)}| <= 1 for j <= n_der (finite differences on a fine grid)
  const int M = 20000;
  const double step = 1.0 / M;
  std::vector<double> v(static_cast<std::size_t>(M + 1));
  for (int i = 0; i <= M; ++i) v[static_cast<std::size_t>(i)] = base(0.2 + 0.9 * i * step);
  double worst = 0.0;
  const double dt = 0.9 * step;
  for (int j = 0; j <= n_der; ++j) {
    for (double x : v) worst = std::max(worst, std::abs(x));
    std::vector<double> next(v.size() - 1);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) next[i] = (v[i + 1] - v[i]) / dt;
    v = std::move(next);
  }
  const double c = 0.99 / std::max(1.0, worst);
  return [base, c](double t) { return c * base(t); };
}

}  // namespace

RestrictionResult restriction_check(const AtomicMeasure& mu, std::span<const Complex> g, int n) {
  if (n < 1) throw DomainError("restriction order n must be >= 1");
  const int d = mu.d();
  const Index N = mu.N();
  const Index L = ipow(N, d);
  if (static_cast<Index>(g.size()) != L) throw DomainError("g must have one entry per lattice point");
  RestrictionResult r;
  r.n = n;
  CVec a(static_cast<std::size_t>(L), Complex(0.0));
  long double wl2 = 0.0L;
  for (Index u : mu.support()) {
    const auto k = static_cast<std::size_t>(u);
    a[k] = g[k] * mu.mass(u);
    wl2 += std::norm(g[k]) * mu.mass(u);
  }
  r.weighted_l2 = static_cast<double>(wl2);
  fft_inplace(a, d, N, FftSign::forward);
  long double lhs = 0.0L;
  for (auto& z : a) {
    lhs += std::pow(static_cast<long double>(std::norm(z)), n);
    z = std::pow(z, n);
  }
  r.lhs = static_cast<double>(lhs);
  fft_inplace(a, d, N, FftSign::inverse);
  long double par = 0.0L;
  for (const auto& z : a) par += std::norm(z / static_cast<double>(L));
  r.lhs_parseval = static_cast<double>(par) * static_cast<double>(L);
  r.max_power_mass = max_power_mass(mu, n);
  r.rhs = static_cast<double>(L) * r.max_power_mass * std::pow(r.weighted_l2, n);
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
  return r;
}

double restriction_ratio(const AtomicMeasure& mu, Index ambient, std::span<const Complex> f, double p) {
  const Index W = ambient == 0 ? mu.N() : ambient;
  const Embedded e = embed(mu, W);
  if (static_cast<Index>(f.size()) != ipow(W, mu.d())) throw DomainError("test function size mismatch");
  return ratio_of(e, CVec(f.begin(), f.end()), p);
}

ApEstimate estimate_Ap(const AtomicMeasure& mu, double p, const ApOptions& opts) {
  if (!(p >= 1.0 && p <= 2.0)) throw DomainError("A_p needs 1 <= p <= 2");
  const Index W = opts.ambient == 0 ? mu.N() : opts.ambient;
  const Embedded e = embed(mu, W);
  const int d = mu.d();
  const auto cells = static_cast<std::size_t>(ipow(W, d));
  const double mass = mu.total_mass();
  double heaviest = 0.0;
  Index heavy_at = e.at.empty() ? 0 : e.at.front();
  for (std::size_t i = 0; i < e.at.size(); ++i)
    if (e.mass[i] > heaviest) {
      heaviest = e.mass[i];
      heavy_at = e.at[i];
    }
  const double Wd = std::pow(static_cast<double>(W), d);
  const double A1 = std::sqrt(mass);
  const double A2 = std::sqrt(Wd * heaviest);

  ApEstimate est;
  est.p = p;
  est.ambient = W;

  // plane wave at the heaviest atom: f̂ is a point spectrum there
  CVec wave(cells);
  {
    std::vector<Index> k(static_cast<std::size_t>(d)), x(static_cast<std::size_t>(d));
    unflatten(heavy_at, W, k);
    for (std::size_t i = 0; i < cells; ++i) {
      unflatten(static_cast<Index>(i), W, x);
      Index dot = 0;
      for (int a = 0; a < d; ++a) dot = wrap(dot + x[static_cast<std::size_t>(a)] * k[static_cast<std::size_t>(a)], W);
      wave[i] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(dot) / static_cast<double>(W));
    }
  }
  CVec delta(cells, Complex(0.0));
  delta[0] = 1.0;

  if (p == 1.0) {
    est.lower = ratio_of(e, delta, 1.0);
    est.upper = A1;
    est.upper_source = "exact";
    est.exact = true;
    return est;
  }
  if (p == 2.0) {
    est.lower = ratio_of(e, wave, 2.0);
    est.upper = A2;
    est.upper_source = "exact";
    est.exact = true;
    return est;
  }

  const double theta = 2.0 - 2.0 / p;
  est.upper = std::pow(A1, 1.0 - theta) * std::pow(A2, theta);
  est.upper_source = "interpolation";
  const double pd = p / (p - 1.0);
  for (int n = 1; n <= opts.max_order && 2.0 * n <= pd + 1e-12; ++n) {
    double Mn = 0.0;
    try {
      Mn = max_power_mass(mu, n);
    } catch (const CapacityError&) {
      break;
    }
    const double b = std::pow(Wd * Mn, 1.0 / (2.0 * n));
    if (b < est.upper) {
      est.upper = b;
      est.upper_source = "duality.n" + std::to_string(n);
    }
  }

  std::vector<CVec> starts{wave, delta};
  for (int s = 0; s < opts.restarts; ++s) {
    SplitMix64 g(trial_seed(opts.seed, static_cast<std::uint64_t>(s)));
    CVec f(cells);
    for (auto& z : f) z = Complex(2.0 * uniform01(g) - 1.0, 2.0 * uniform01(g) - 1.0);
    starts.push_back(std::move(f));
  }
  std::vector<Ascent> runs(starts.size());
  parallel_for(static_cast<std::int64_t>(starts.size()),
               [&](std::int64_t i) { runs[static_cast<std::size_t>(i)] = ascend(e, starts[static_cast<std::size_t>(i)], p, opts); });
  for (const auto& r : runs) {
    est.iterations += r.iterations;
    if (r.value > est.lower) {
      est.lower = r.value;
      est.converged = r.converged;
    }
  }
  if (est.lower > est.upper * (1.0 + 1e-9))
    throw ConsistencyError("A_p lower bound " + std::to_string(est.lower) + " exceeds upper bound " +
                           std::to_string(est.upper));
  return est;
}

double lambda_critical(int d, double alpha, double q) { return d * (1.0 / q - 0.5) - (d - alpha) / 2.0; }

MultiplierKernel build_m_lambda(const AtomicMeasure& mu, double lambda, double alpha, const ChiSpec& chi, Index W,
                                Index length, const std::vector<double>& qs) {
  const int d = mu.d();
  const Index N = mu.N();
  if (!(lambda > alpha - d)) throw DomainError("m_lambda needs lambda > alpha - d");
  if (length < 1 || W % (N * length) != 0)
    throw ConfigurationError("window " + std::to_string(W) + " must be a multiple of N*length = " +
                             std::to_string(N * length));
  const Index s = W / (N * length);
  if ((W - N * s) % 2 != 0) throw ConfigurationError("window offset (W - N*s)/2 is not an integer");
  const Index J0 = (W - N * s) / 2;
  const double h = static_cast<double>(length) / static_cast<double>(W);
  if (chi.kind == ChiSpec::Kind::bump && static_cast<double>(J0) * h + 1e-12 < chi.radius)
    throw ConfigurationError("cutoff radius does not fit in the frequency window");
  const Index cells = checked_cell_count(d, W);
  const double e = lambda - alpha;

  // χ = φ*φ (nonnegative transform), normalized to χ(0) = 1
  std::vector<double> chi_tab;
  const double radius_cells = chi.radius / h;
  std::vector<Index> c(static_cast<std::size_t>(d));
  if (chi.kind == ChiSpec::Kind::bump) {
    CVec phi(static_cast<std::size_t>(cells));
    for (Index i = 0; i < cells; ++i) {
      unflatten(i, W, c);
      for (Index& x : c) x = centered(x, W);
      const double t = 2.0 * norm_of(c) * h / chi.radius;
      phi[static_cast<std::size_t>(i)] = t < 1.0 ? std::pow(1.0 - t * t, 4) : 0.0;
    }
    fft_inplace(phi, d, W, FftSign::forward);
    for (auto& z : phi) z = std::norm(z);
    fft_inplace(phi, d, W, FftSign::inverse);
    chi_tab.resize(static_cast<std::size_t>(cells));
    const double at0 = phi[0].real();
    for (Index i = 0; i < cells; ++i) {
      unflatten(i, W, c);
      for (Index& x : c) x = centered(x, W);
      chi_tab[static_cast<std::size_t>(i)] = norm_of(c) < radius_cells ? phi[static_cast<std::size_t>(i)].real() / at0 : 0.0;
    }
  }
  const double rh = cell_ball_radius(d, h);
  const double at_zero = d / (d + e) * std::pow(rh, e);

  MultiplierKernel out;
  out.d = d;
  out.W = W;
  out.length = static_cast<double>(length);
  out.h = h;
  out.lambda = lambda;
  out.alpha = alpha;
  out.m.assign(static_cast<std::size_t>(cells), 0.0);
  std::vector<Index> uc(static_cast<std::size_t>(d)), diff(static_cast<std::size_t>(d)), wrapped(static_cast<std::size_t>(d));
  for (Index u : mu.support()) {
    const double w = mu.mass(u);
    unflatten(u, N, uc);
    for (Index j = 0; j < cells; ++j) {
      unflatten(j, W, c);
      for (int a = 0; a < d; ++a) {
        const auto k = static_cast<std::size_t>(a);
        diff[k] = c[k] - J0 - uc[k] * s;
        wrapped[k] = wrap(diff[k], W);
      }
      const double dist = norm_of(diff);
      double chiv = 1.0;
      if (chi.kind == ChiSpec::Kind::bump) {
        if (dist >= radius_cells) continue;
        chiv = chi_tab[static_cast<std::size_t>(flat_index(wrapped, W))];
      }
      out.m[static_cast<std::size_t>(j)] += w * chiv * (dist == 0.0 ? at_zero : std::pow(dist * h, e));
    }
  }
  const double hd = std::pow(h, d);
  long double mass = 0.0L;
  for (double v : out.m) mass += v;
  out.mass = static_cast<double>(mass) * hd;

  CVec K(out.m.begin(), out.m.end());
  fft_inplace(K, d, W, FftSign::inverse);
  const double dx = std::pow(1.0 / (static_cast<double>(W) * h), d);
  for (double q : qs) {
    if (std::isinf(q)) {
      out.kernel_norms.push_back(lp_norm(K, q) * hd);
      continue;
    }
    long double acc = 0.0L;
    for (const auto& z : K) acc += std::pow(static_cast<long double>(std::abs(z) * hd), static_cast<long double>(q));
    out.kernel_norms.push_back(static_cast<double>(std::pow(acc * dx, 1.0L / static_cast<long double>(q))));
  }
  out.qs = qs;
  return out;
}

KernelSweep kernel_norm_sweep(const AtomicMeasure& mu, double lambda, double alpha, const ChiSpec& chi,
                              const std::vector<Index>& windows, Index length, const std::vector<double>& qs) {
  KernelSweep sw;
  sw.windows = windows;
  sw.qs = qs;
  sw.norms.assign(qs.size(), {});
  for (Index W : windows) {
    const auto mk = build_m_lambda(mu, lambda, alpha, chi, W, length, qs);
    for (std::size_t i = 0; i < qs.size(); ++i) sw.norms[i].push_back(mk.kernel_norms[i]);
  }
  std::vector<double> xs(windows.begin(), windows.end());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    sw.slopes.push_back(windows.size() >= 2 ? log_log_slope(xs, sw.norms[i]) : 0.0);
    sw.lambda_crit.push_back(lambda_critical(mu.d(), alpha, qs[i]));
  }
  sw.q_atomic = mu.d() / (mu.d() + lambda - alpha);
  return sw;
}

AnnulusSetup prepare_annulus(const AtomicMeasure& mu, const AnnulusParams& params, const ApEstimate* ap) {
  const int d = mu.d();
  if (!(params.r > 0.0 && params.r <= 0.25)) throw DomainError("annulus radius must lie in (0, 1/4]");
  if (!(params.p >= 1.0 && params.p <= params.q && params.q <= 2.0)) throw DomainError("need 1 <= p <= q <= 2");
  if (params.oversample < 1) throw DomainError("oversample must be >= 1");
  const Index W = mu.N() * params.oversample;
  const Index cells = checked_cell_count(d, W);
  if (params.r / 4.0 * static_cast<double>(W) < 2.0)
    throw ConfigurationError("annulus r/4 <= |xi| <= r is not resolved by the frequency grid; raise oversample");
  const auto eta = params.eta ? params.eta : default_eta(params.n_der);

  AnnulusSetup st;
  st.d = d;
  st.W = W;
  st.r = params.r;
  std::vector<double> tab(static_cast<std::size_t>(cells));
  std::vector<Index> c(static_cast<std::size_t>(d));
  const double cell = 1.0 / static_cast<double>(W);
  for (Index i = 0; i < cells; ++i) {
    unflatten(i, W, c);
    for (Index& x : c) x = centered(x, W);
    const double t = norm_of(c) * cell / params.r;
    const double v = eta(t);
    if ((t < 0.25 - 1e-12 || t > 1.0 + 1e-12) && v != 0.0)
      throw DomainError("eta_r must vanish outside r/4 <= |xi| <= r");
    tab[static_cast<std::size_t>(i)] = v;
  }
  // r^j ‖∂^j η_r‖_∞ along axis 0 by forward differences
  {
    std::vector<double> line(static_cast<std::size_t>(W));
    for (Index i = 0; i < W; ++i) line[static_cast<std::size_t>(i)] = eta(std::abs(static_cast<double>(centered(i, W))) * cell / params.r);
    double worst = 0.0;
    for (int j = 0; j <= params.n_der; ++j) {
      double m = 0.0;
      for (double x : line) m = std::max(m, std::abs(x));
      const double v = m * std::pow(params.r, j);
      st.derivative_norms.push_back(v);
      worst = std::max(worst, v);
      std::vector<double> next(line.size());
      for (std::size_t i = 0; i < line.size(); ++i) next[i] = (line[(i + 1) % line.size()] - line[i]) / cell;
      line = std::move(next);
    }
    st.derivative_residual = std::max(0.0, worst - 1.0);
  }
  st.order_ok = params.n_der > d * (1.0 / params.q - 0.5);

  st.h.assign(static_cast<std::size_t>(cells), 0.0);
  const auto atoms = embedded_atoms(mu, W);
  const auto support = mu.support();
  std::vector<Index> a(static_cast<std::size_t>(d)), off(static_cast<std::size_t>(d));
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const double w = mu.mass(support[k]);
    unflatten(atoms[k], W, a);
    for (Index i = 0; i < cells; ++i) {
      unflatten(i, W, c);
      for (int ax = 0; ax < d; ++ax)
        off[static_cast<std::size_t>(ax)] = wrap(c[static_cast<std::size_t>(ax)] - a[static_cast<std::size_t>(ax)], W);
      st.h[static_cast<std::size_t>(i)] += w * tab[static_cast<std::size_t>(flat_index(off, W))];
    }
  }

  if (ap) {
    if (ap->ambient != W) throw ConfigurationError("A_p estimate was computed on a different ambient grid");
    st.ap = *ap;
  } else {
    ApOptions o;
    o.ambient = W;
    st.ap = estimate_Ap(mu, params.p, o);
  }
  st.varpi = ball_mass_profile(mu, {params.r}).front().mass;
  st.scale = std::pow(params.r, d - d / params.q) * st.ap.upper * std::sqrt(st.varpi);
  return st;
}

double annulus_ratio(const AnnulusSetup& st, std::span<const Complex> f, double p, double q) {
  if (static_cast<Index>(f.size()) != static_cast<Index>(st.h.size())) throw DomainError("test function size mismatch");
  const double fp = lp_norm(f, p);
  if (fp == 0.0) throw DomainError("test function has zero norm");
  CVec F(f.begin(), f.end());
  fft_inplace(F, st.d, st.W, FftSign::forward);
  for (std::size_t i = 0; i < F.size(); ++i) F[i] *= st.h[i];
  fft_inplace(F, st.d, st.W, FftSign::inverse);
  const double inv = 1.0 / static_cast<double>(F.size());
  for (auto& z : F) z *= inv;
  return lp_norm(F, q) / (st.scale * fp);
}

AnnulusReport annulus_multiplier_check(const AtomicMeasure& mu, const AnnulusParams& params, const ApEstimate* ap) {
  const AnnulusSetup st = prepare_annulus(mu, params, ap);
  AnnulusReport rep;
  rep.r = params.r;
  rep.ap_upper = st.ap.upper;
  rep.varpi = st.varpi;
  rep.scale = st.scale;
  rep.derivative_norms = st.derivative_norms;
  rep.derivative_residual = st.derivative_residual;
  rep.order_ok = st.order_ok;
  rep.ratios.assign(static_cast<std::size_t>(std::max(0, params.batch)), 0.0);
  parallel_for(params.batch, [&](std::int64_t b) {
    SplitMix64 g(trial_seed(params.seed, static_cast<std::uint64_t>(b)));
    CVec f(st.h.size());
    for (auto& z : f) z = Complex(2.0 * uniform01(g) - 1.0, 0.0);
    rep.ratios[static_cast<std::size_t>(b)] = annulus_ratio(st, f, params.p, params.q);
  });
  for (double r : rep.ratios) rep.max_ratio = std::max(rep.max_ratio, r);

  if (params.decomposition) {
    const int d = st.d;
    const Index W = st.W;
    CVec k(st.h.begin(), st.h.end());
    fft_inplace(k, d, W, FftSign::inverse);
    const double reach = std::sqrt(static_cast<double>(d)) * static_cast<double>(W) / 2.0;
    int n_max = 0;
    while (std::ldexp(params.r, -n_max) * reach > 0.5) ++n_max;
    std::vector<double> radius(k.size());
    std::vector<Index> c(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < k.size(); ++i) {
      unflatten(static_cast<Index>(i), W, c);
      for (Index& x : c) x = centered(x, W);
      radius[i] = norm_of(c);
    }
    CVec total(k.size(), Complex(0.0));
    const double inv = 1.0 / static_cast<double>(k.size());
    for (int n = 0; n <= n_max; ++n) {
      CVec piece(k.size());
      for (std::size_t i = 0; i < k.size(); ++i) {
        const double outer = cutoff_phi(std::ldexp(params.r, -n) * radius[i]);
        const double inner = n == 0 ? 0.0 : cutoff_phi(std::ldexp(params.r, -n + 1) * radius[i]);
        piece[i] = k[i] * inv * (outer - inner);
      }
      fft_inplace(piece, d, W, FftSign::forward);
      double sup = 0.0;
      for (std::size_t i = 0; i < piece.size(); ++i) {
        total[i] += piece[i];
        sup = std::max(sup, std::abs(piece[i]));
      }
      rep.piece_sup.push_back(sup);
    }
    for (std::size_t i = 0; i < total.size(); ++i)
      rep.reconstruction_error = std::max(rep.reconstruction_error, std::abs(total[i] - st.h[i]));
  }
  return rep;
}

EndpointSum endpoint_dyadic_sum(const AtomicMeasure& mu, double alpha) {
  EndpointSum es;
  for (double t = 0.5; t * static_cast<double>(mu.N()) >= 1.0 - 1e-12; t /= 2.0) es.t.push_back(t);
  const auto balls = ball_mass_profile(mu, es.t);
  double run = 0.0;
  std::vector<double> js, logs;
  for (std::size_t j = 0; j < es.t.size(); ++j) {
    const double term = std::sqrt(std::pow(es.t[j], -alpha) * balls[j].mass);
    es.terms.push_back(term);
    run += term;
    es.partial.push_back(run);
    js.push_back(static_cast<double>(j));
    logs.push_back(std::log2(term));
  }
  if (js.size() >= 2) {
    const double mx = std::accumulate(js.begin(), js.end(), 0.0) / static_cast<double>(js.size());
    const double my = std::accumulate(logs.begin(), logs.end(), 0.0) / static_cast<double>(logs.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < js.size(); ++i) {
      sxy += (js[i] - mx) * (logs[i] - my);
      sxx += (js[i] - mx) * (js[i] - mx);
    }
    es.slope = sxy / sxx;
    es.converges = es.slope < 0.0;
  }
  return es;
}

AdDiagnostic ad_regularity_diagnostic(const AtomicMeasure& mu, double alpha, double c_lower, std::vector<double> rhos) {
  const int d = mu.d();
  const Index N = mu.N();
  if (!(alpha > 0.0 && alpha <= d)) throw DomainError("alpha must lie in (0, d]");
  AdDiagnostic out;
  out.alpha = alpha;
  out.c_lower = c_lower;
  const Index cells = ipow(N, d);
  const auto support = mu.support();
  std::vector<Index> c(static_cast<std::size_t>(d)), x(static_cast<std::size_t>(d));
  out.lower_regular = true;
  for (double r = 0.5; r * static_cast<double>(N) >= 1.0 - 1e-12; r /= 2.0) {
    // lattice offsets within Euclidean distance r, deduplicated mod N
    const auto reach = static_cast<Index>(std::floor(r * static_cast<double>(N) + 1e-9));
    std::vector<char> mark(static_cast<std::size_t>(cells), 0);
    std::vector<Index> o(static_cast<std::size_t>(d), -reach);
    for (;;) {
      if (norm_of(o) <= r * static_cast<double>(N) + 1e-9) {
        for (int a = 0; a < d; ++a) x[static_cast<std::size_t>(a)] = wrap(o[static_cast<std::size_t>(a)], N);
        mark[static_cast<std::size_t>(flat_index(x, N))] = 1;
      }
      int a = d - 1;
      while (a >= 0 && ++o[static_cast<std::size_t>(a)] > reach) o[static_cast<std::size_t>(a--)] = -reach;
      if (a < 0) break;
    }
    std::vector<Index> ball;
    for (Index i = 0; i < cells; ++i)
      if (mark[static_cast<std::size_t>(i)]) ball.push_back(i);
    LowerRegularity lr;
    lr.r = r;
    lr.min_ratio = std::numeric_limits<double>::infinity();
    std::vector<Index> oc(static_cast<std::size_t>(d));
    for (Index u : support) {
      unflatten(u, N, c);
      double m = 0.0;
      for (Index b : ball) {
        unflatten(b, N, oc);
        for (int a = 0; a < d; ++a)
          x[static_cast<std::size_t>(a)] = wrap(c[static_cast<std::size_t>(a)] + oc[static_cast<std::size_t>(a)], N);
        m += mu.mass(flat_index(x, N));
      }
      const double ratio = m / std::pow(r, alpha);
      if (ratio < lr.min_ratio) {
        lr.min_ratio = ratio;
        lr.witness = u;
      }
    }
    if (lr.min_ratio < c_lower) out.lower_regular = false;
    out.lower.push_back(lr);
  }

  if (rhos.empty()) {
    for (Index rho = 8; 4 * rho <= N; rho *= 2) rhos.push_back(static_cast<double>(rho));
    if (rhos.empty())
      for (Index rho = 1; 4 * rho <= N; rho *= 2) rhos.push_back(static_cast<double>(rho));
  }
  if (!rhos.empty()) out.blocks = b_rho_blocks(mu, alpha, rhos);
  for (const auto& b : out.blocks) out.max_block = std::max(out.max_block, b.value);
  out.degenerate_window = out.blocks.empty() || out.max_block < 1e-12;
  if (!out.degenerate_window) out.blocks_decay = out.blocks.back().value <= out.blocks.front().value / 4.0;

  if (out.degenerate_window) {
    out.verdict = "degenerate window: no spectral mass in the resolvable blocks";
  } else if (out.lower_regular && out.blocks_decay) {
    out.consistent = false;
    out.verdict = "inconsistent: lower-regular yet blocks decay";
  } else if (out.lower_regular) {
    out.verdict = "lower-regular, blocks bounded below";
  } else if (out.blocks_decay) {
    out.verdict = "not lower-regular, blocks decay";
  } else {
    out.verdict = "inconclusive: not lower-regular and blocks do not decay";
  }
  out.endpoint = endpoint_dyadic_sum(mu, alpha);
  return out;
}

}  // namespace salemlab

#include "salemlab/transference/transference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "salemlab/errors.hpp"
#include "salemlab/grid/convolution.hpp"
#include "salemlab/grid/dft.hpp"
#include "salemlab/grid/metric.hpp"
#include "salemlab/grid/window_sum.hpp"
#include "salemlab/sampler/sample.hpp"

namespace salemlab {

namespace {

void require_divisible(Index R, Index by, const char* what) {
  if (by < 1 || R % by != 0)
    throw ConfigurationError(std::string(what) + ": resolution " + std::to_string(R) +
                             " is not divisible by " + std::to_string(by));
}

GridFunction tensor(int d, Index R, const std::vector<double>& axis) {
  GridFunction out(d, R);
  std::vector<Index> c(static_cast<std::size_t>(d));
  auto v = out.values_mut();
  for (Index i = 0; i < out.size(); ++i) {
    unflatten(i, R, c);
    double p = 1.0;
    for (Index x : c) p *= axis[static_cast<std::size_t>(x)];
    v[static_cast<std::size_t>(i)] = p;
  }
  return out;
}

std::vector<double> box_1d(Index N, Index R) {
  std::vector<double> b(static_cast<std::size_t>(R), 0.0);
  const Index half = R / (2 * N);
  for (Index j = 0; j < R; ++j) {
    const Index c = centered(j, R);
    if (c >= -half && c < half) b[static_cast<std::size_t>(j)] = static_cast<double>(N);
  }
  return b;
}

std::vector<double> mollifier_1d(Index N, Index R) {
  std::vector<double> u(static_cast<std::size_t>(R), 0.0);
  long double total = 0.0L;
  for (Index j = 0; j < R; ++j) {
    const double x = 2.0 * static_cast<double>(N) * static_cast<double>(centered(j, R)) / static_cast<double>(R);
    if (std::abs(x) < 1.0) {
      const double w = 1.0 - x * x;
      u[static_cast<std::size_t>(j)] = w * w * w * w;
      total += u[static_cast<std::size_t>(j)];
    }
  }
  if (total <= 0.0L) throw ConfigurationError("mollifier has no grid support; refine the grid");
  const double scale = static_cast<double>(static_cast<long double>(R) / total);
  for (double& x : u) x *= scale;
  return u;
}

// Normalized cyclic convolution of two 1-D sequences, summing only over the
// nonzero entries of `a` so that exact zeros stay exact.
std::vector<double> sparse_conv_1d(const std::vector<double>& a, const std::vector<double>& b) {
  const auto R = static_cast<Index>(a.size());
  std::vector<double> out(a.size(), 0.0);
  for (Index i = 0; i < R; ++i) {
    const double ai = a[static_cast<std::size_t>(i)];
    if (ai == 0.0) continue;
    for (Index j = 0; j < R; ++j) {
      const double bj = b[static_cast<std::size_t>(j)];
      if (bj != 0.0) out[static_cast<std::size_t>(wrap(i + j, R))] += ai * bj;
    }
  }
  for (double& x : out) x /= static_cast<double>(R);
  return out;
}

double window_max(const GridFunction& f, Index side_cells) {
  const std::vector<Index> sides(static_cast<std::size_t>(f.d()), side_cells);
  const auto sums = cyclic_box_sums<double, long double>(f.values(), f.d(), f.R(), sides);
  return *std::max_element(sums.begin(), sums.end());
}

std::vector<Index> dyadic_sides(Index lo, Index hi) {
  std::vector<Index> s;
  for (Index L = std::max<Index>(lo, 1); L < hi; L *= 2) s.push_back(L);
  s.push_back(hi);
  return s;
}

double weighted_sup(const Spectrum& sp, double alpha, const ModulusPsi& psi, std::vector<Index>* at) {
  double best = 0.0;
  Index arg = -1;
  for (Index k = 1; k < sp.size(); ++k) {
    const double r = sp.frequency_norm(k);
    const double v = std::pow(r, alpha / 2.0) * std::abs(sp[k]) / psi(1.0 / r);
    if (v > best) {
      best = v;
      arg = k;
    }
  }
  if (at && arg >= 0) *at = sp.frequency(arg);
  return best;
}

std::vector<bool> support_mask(const GridFunction& f) {
  std::vector<bool> m(static_cast<std::size_t>(f.size()));
  for (Index i = 0; i < f.size(); ++i) m[static_cast<std::size_t>(i)] = f[i] > 0.0;
  return m;
}

}  // namespace

GridFunction box_kernel(int d, Index N, Index R) {
  require_divisible(R, 2 * N, "box kernel");
  return tensor(d, R, box_1d(N, R));
}

AtomicMeasure lattice_comb(int d, Index N) { return AtomicMeasure::uniform(TorusGrid(d, N)); }

GridFunction mollifier(const MollifierSpec& spec, Index R) {
  require_divisible(R, 2 * spec.N, "mollifier");
  return tensor(spec.d, R, mollifier_1d(spec.N, R));
}

GridFunction place_kernel(const GridFunction& kernel, const AtomicMeasure& mu) {
  const int d = kernel.d();
  const Index R = kernel.R();
  const Index N = mu.N();
  if (mu.d() != d) throw DomainError("kernel and measure dimensions differ");
  require_divisible(R, N, "kernel placement");
  const Index c = R / N;
  std::vector<Index> offsets;
  for (Index i = 0; i < kernel.size(); ++i)
    if (kernel[i] != 0.0) offsets.push_back(i);
  GridFunction out(d, R);
  auto o = out.values_mut();
  std::vector<Index> uc(static_cast<std::size_t>(d)), oc(static_cast<std::size_t>(d)), x(static_cast<std::size_t>(d));
  for (Index u : mu.support()) {
    const double w = mu.mass(u);
    unflatten(u, N, uc);
    for (Index off : offsets) {
      unflatten(off, R, oc);
      for (int a = 0; a < d; ++a)
        x[static_cast<std::size_t>(a)] = wrap(uc[static_cast<std::size_t>(a)] * c + oc[static_cast<std::size_t>(a)], R);
      o[static_cast<std::size_t>(flat_index(x, R))] += w * kernel[off];
    }
  }
  return out;
}

Mollified mollify_build_f(const AtomicMeasure& mu, Index R) {
  const int d = mu.d();
  const Index N = mu.N();
  require_divisible(R, 2 * N, "mollified measure");
  const auto box = box_1d(N, R);
  const auto k1 = sparse_conv_1d(mollifier_1d(N, R), box);
  GridFunction kernel = tensor(d, R, k1);
  GridFunction g = place_kernel(tensor(d, R, box), mu);
  GridFunction f = place_kernel(kernel, mu);
  return {std::move(f), std::move(g), std::move(kernel)};
}

GridFunction periodize(const GridFunction& f, Index p) {
  if (p < 1) throw DomainError("periodization factor must be >= 1");
  const int d = f.d();
  const Index Rin = f.R();
  const Index R = Rin * p;
  checked_cell_count(d, R);
  GridFunction out(d, R);
  auto o = out.values_mut();
  std::vector<Index> c(static_cast<std::size_t>(d));
  for (Index i = 0; i < out.size(); ++i) {
    unflatten(i, R, c);
    for (Index& x : c) x %= Rin;
    o[static_cast<std::size_t>(i)] = f[flat_index(c, Rin)];
  }
  return out;
}

Index fm_resolution(const FmParams& params, int d, Index refine) {
  Index N = 1;
  for (int i = 0; i < params.k; ++i) N *= params.m;
  const Index R = refine * 2 * N * (2 * params.m + 1);
  checked_cell_count(d, R);
  return R;
}

FmBuild build_F_m(const AtomicMeasure& mu, const FmParams& params, Index R) {
  if (params.m < 2 || params.k < 1) throw DomainError("F_m needs m >= 2 and k >= 1");
  Index N = 1;
  for (int i = 0; i < params.k; ++i) N *= params.m;
  if (mu.N() != N)
    throw ConfigurationError("measure lives on Z_" + std::to_string(mu.N()) + ", expected N = m^k = " +
                             std::to_string(N));
  if (!factorial_coprime(params.m, params.max_order))
    throw ConfigurationError("gcd(" + std::to_string(params.max_order) + "!, m) != 1");
  const Index p = 2 * params.m + 1;
  require_divisible(R, 2 * N * p, "F_m");
  FmBuild b{GridFunction(mu.d(), 2), Mollified{GridFunction(mu.d(), 2), GridFunction(mu.d(), 2), GridFunction(mu.d(), 2)},
            params, N, p, {}};
  if (!(params.beta > params.alpha))
    b.warnings.push_back("beta <= alpha: the decay exponent condition cannot hold");
  else if (!(params.k > (params.alpha + 1.0) / (params.beta - params.alpha)))
    b.warnings.push_back("k <= (alpha+1)/(beta-alpha): asymptotic decay of F_m not guaranteed");
  b.parts = mollify_build_f(mu, R / p);
  b.F = periodize(b.parts.f, p);
  return b;
}

SupportCover support_cover(const FmBuild& build, const AtomicMeasure& mu) {
  const int d = mu.d();
  const Index N = build.N;
  const Index Rf = build.parts.f.R();
  const Index c = Rf / N;
  SupportCover out;
  const auto atoms = mu.support();
  Index pd = 1;
  for (int i = 0; i < d; ++i) pd *= build.p;
  out.cubes_used = pd * static_cast<Index>(atoms.size());
  out.cube_budget = pd * floor_power(N, build.params.beta);
  // 2/(N p) <= m^{−k−1}  ⇔  2 m^{k+1} <= N p
  out.side_fits = 2 * N * build.params.m <= N * build.p;
  std::vector<std::vector<Index>> ac;
  for (Index a : atoms) ac.push_back(mu.grid().coords(a));
  std::vector<Index> x(static_cast<std::size_t>(d));
  out.covered = true;
  for (Index i = 0; i < build.parts.f.size(); ++i) {
    if (build.parts.f[i] == 0.0) continue;
    ++out.support_cells;
    unflatten(i, Rf, x);
    const bool inside = std::any_of(ac.begin(), ac.end(), [&](const std::vector<Index>& a) {
      for (int k = 0; k < d; ++k)
        if (cyclic_gap(x[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(k)] * c, Rf) >= c) return false;
      return true;
    });
    if (!inside) out.covered = false;
  }
  // F_m repeats f's support once per fundamental cube.
  Index fcells = 0;
  for (double v : build.F.values()) fcells += v > 0.0 ? 1 : 0;
  if (fcells != out.support_cells * pd) out.covered = false;
  return out;
}

std::vector<EventReport> verify_Fm_properties(const FmBuild& build, const AtomicMeasure& mu,
                                              const FmCheckParams& params) {
  const GridFunction& F = build.F;
  const int d = F.d();
  const Index R = F.R();
  const double Rd = std::pow(static_cast<double>(R), d);
  const double alpha = build.params.alpha;
  const double eta = params.eta;
  const double sqrt_m = std::sqrt(static_cast<double>(build.params.m));
  const double split = d / alpha;
  std::vector<EventReport> out;

  {
    EventReport r;
    r.event = "fm.mean";
    r.certifies = "integral of F_m equals 1";
    r.observed = std::abs(F.mean() - 1.0);
    r.threshold = 1e-12;
    r.extras["mean"] = F.mean();
    r.decide();
    out.push_back(std::move(r));
  }
  {
    const SupportCover sc = support_cover(build, mu);
    EventReport r;
    r.event = "fm.support";
    r.certifies = "supp F_m is covered by (2m+1)^d floor(m^{k beta}) cubes of side m^{-k-1}";
    r.observed = static_cast<double>(sc.cubes_used);
    r.threshold = static_cast<double>(sc.cube_budget);
    r.witness["covered"] = sc.covered;
    r.witness["side_fits"] = sc.side_fits;
    r.witness["support_cells_of_f"] = sc.support_cells;
    r.decide();
    r.pass = r.pass && sc.pass();
    out.push_back(std::move(r));
  }
  {
    EventReport r;
    r.event = "fm.decay";
    r.certifies = "sup_{r!=0} |r|^{alpha/2} |F_m^(r)| / psi(1/|r|) <= eta";
    std::vector<Index> at;
    r.observed = weighted_sup(dft(F), alpha, params.psi, &at);
    r.threshold = eta;
    r.witness["frequency"] = at;
    r.decide();
    out.push_back(std::move(r));
  }

  GridFunction power = F;
  for (int n = 1; n <= build.params.max_order; ++n) {
    if (n > 1) power = convolve(power, F);
    const std::string tag = std::to_string(n);
    if (n < split - 1e-12) {
      EventReport q;
      q.event = "fm.small_cubes.n" + tag;
      q.certifies = "integral_Q F_m^{*n} <= eta psi(|Q|) |Q|^{n alpha/d}, side <= 2/sqrt(m)";
      const auto Lmax = std::max<Index>(1, std::min<Index>(R, static_cast<Index>(std::floor(2.0 * R / sqrt_m))));
      q.observed = 0.0;
      for (Index L : dyadic_sides(1, Lmax)) {
        const double vol = std::pow(static_cast<double>(L) / static_cast<double>(R), d);
        const double integral = window_max(power, L) / Rd;
        const double ratio = integral / (params.psi(vol) * std::pow(vol, n * alpha / d));
        if (ratio > q.observed) {
          q.observed = ratio;
          q.witness["side_cells"] = L;
          q.witness["integral"] = integral;
        }
      }
      q.threshold = eta;
      q.extras["n"] = n;
      q.decide();
      out.push_back(std::move(q));

      EventReport r;
      r.event = "fm.rectangles.n" + tag;
      r.certifies = "integral_R F_m^{*n} <= (1+eta)|R| for rectangles with sides >= 1/sqrt(m)";
      const auto Lmin = static_cast<Index>(std::ceil(static_cast<double>(R) / sqrt_m - 1e-9));
      const auto sides = dyadic_sides(Lmin, R);
      std::vector<Index> shape(static_cast<std::size_t>(d), 0);
      std::vector<std::size_t> pick(static_cast<std::size_t>(d), 0);
      r.observed = 0.0;
      Index shapes = 0;
      for (;;) {
        double vol = 1.0;
        for (int a = 0; a < d; ++a) {
          shape[static_cast<std::size_t>(a)] = sides[pick[static_cast<std::size_t>(a)]];
          vol *= static_cast<double>(shape[static_cast<std::size_t>(a)]) / static_cast<double>(R);
        }
        const auto sums = cyclic_box_sums<double, long double>(power.values(), d, R, shape);
        const double ratio = *std::max_element(sums.begin(), sums.end()) / Rd / vol;
        ++shapes;
        if (ratio > r.observed) {
          r.observed = ratio;
          r.witness["sides_cells"] = shape;
        }
        int a = d - 1;
        while (a >= 0 && ++pick[static_cast<std::size_t>(a)] == sides.size()) pick[static_cast<std::size_t>(a--)] = 0;
        if (a < 0) break;
      }
      r.threshold = 1.0 + eta;
      r.extras["n"] = n;
      r.extras["shapes"] = shapes;
      r.extras["anchors_per_shape"] = power.size();
      r.decide();
      out.push_back(std::move(r));
    } else {
      EventReport h;
      h.event = "fm.holder.n" + tag;
      const double rho = (n * alpha - d) / 2.0;
      h.certifies = "||F_m^{*n} - 1||_{C^{rho_n,psi}} <= eta, rho_n = (n alpha - d)/2";
      const HolderEstimate est = holder_norm(shifted(power, 1.0), std::max(0.0, rho), params.psi, params.sampling);
      h.observed = est.norm;
      h.threshold = eta;
      h.extras["n"] = n;
      h.extras["rho"] = rho;
      h.extras["sup_norm"] = est.sup_norm;
      h.extras["omega"] = est.omega;
      h.extras["sampling"] = est.sampling;
      h.decide();
      out.push_back(std::move(h));
    }
  }
  for (const auto& w : build.warnings)
    for (auto& r : out) r.warnings.push_back(w);
  return out;
}

MetricComponents approximation_step(const GridFunction& g, const GridFunction& F, const ApproxParams& params) {
  if (g.d() != F.d() || g.R() != F.R()) throw DomainError("g and F_m must share a grid");
  if (g.min() < -1e-12 * std::max(1.0, g.max())) throw DomainError("g must be nonnegative");
  const int d = g.d();
  const Index R = g.R();
  const double Rd = std::pow(static_cast<double>(R), d);
  const double alpha = params.alpha;
  const GridFunction Fg = multiply(F, g);
  MetricComponents mc;

  const auto K = support_mask(g);
  auto H = support_mask(Fg);
  const auto stride = std::max<Index>(1, static_cast<Index>(std::floor(params.net_spacing * static_cast<double>(R))));
  std::vector<Index> c(static_cast<std::size_t>(d));
  for (Index i = 0; i < g.size(); ++i) {
    if (!K[static_cast<std::size_t>(i)]) continue;
    unflatten(i, R, c);
    if (std::all_of(c.begin(), c.end(), [&](Index x) { return x % stride == 0; })) H[static_cast<std::size_t>(i)] = true;
  }
  if (std::none_of(K.begin(), K.end(), [](bool b) { return b; })) throw DomainError("g vanishes identically");
  mc.hausdorff = hausdorff_distance(K, H, d, R);
  mc.zero_coefficient = std::abs(g.mean() - Fg.mean());

  const Spectrum sg = dft(g), sfg = dft(Fg);
  std::vector<Complex> diff(static_cast<std::size_t>(sg.size()));
  for (Index k = 0; k < sg.size(); ++k) diff[static_cast<std::size_t>(k)] = sg[k] - sfg[k];
  mc.weighted_fourier = weighted_sup(Spectrum(d, R, std::move(diff)), alpha, params.psi, nullptr);

  auto cube_ratio = [&](const GridFunction& h, int n) {
    double best = 0.0;
    for (Index L : dyadic_sides(1, R)) {
      const double vol = std::pow(static_cast<double>(L) / static_cast<double>(R), d);
      best = std::max(best, window_max(h, L) / Rd / (params.psi(vol) * std::pow(vol, n * alpha / d)));
    }
    return best;
  };

  GridFunction gp = g, fp = Fg;
  mc.total = mc.hausdorff + mc.zero_coefficient + mc.weighted_fourier;
  for (int n = 1; n <= params.max_order; ++n) {
    if (n > 1) {
      gp = convolve(gp, g);
      fp = convolve(fp, Fg);
    }
    if (n < d / alpha - 1e-12) {
      mc.low_orders.push_back(n);
      mc.low_ratios.push_back(cube_ratio(fp, n));
      mc.input_slack.push_back(1.0 - cube_ratio(gp, n));
    } else {
      GridFunction delta = gp;
      auto dv = delta.values_mut();
      for (Index i = 0; i < delta.size(); ++i) dv[static_cast<std::size_t>(i)] -= fp[i];
      const double rho = std::max(0.0, (n * alpha - d) / 2.0);
      const double term = holder_norm(delta, rho, params.psi, params.sampling).norm;
      mc.holder_orders.push_back(n);
      mc.holder_terms.push_back(term);
      mc.total += std::ldexp(1.0, -n) * std::min(1.0, term);
    }
  }
  return mc;
}

GridFunction trig_polynomial_1d(Index R, const std::vector<std::pair<Index, Complex>>& terms) {
  GridFunction out(1, R);
  auto v = out.values_mut();
  for (Index j = 0; j < R; ++j) {
    Complex acc = 0.0;
    for (const auto& [r, c] : terms) {
      const double phase = 2.0 * std::numbers::pi * static_cast<double>(wrap(r * j, R)) / static_cast<double>(R);
      acc += c * Complex(std::cos(phase), std::sin(phase));
    }
    v[static_cast<std::size_t>(j)] = acc.real();
  }
  return out;
}

}  // namespace salemlab

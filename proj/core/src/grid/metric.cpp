#include "salemlab/grid/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "salemlab/errors.hpp"

namespace salemlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cyclic_coord_gap(double a, double b) {
  double g = std::fmod(std::abs(a - b), 1.0);
  return std::min(g, 1.0 - g);
}

// Lower envelope of parabolas (x − q)² + f(q) over the listed sites
// (Felzenszwalb-Huttenlocher), evaluated at x = 0..R-1.
void envelope_1d(const std::vector<double>& site_pos, const std::vector<double>& site_val,
                 Index R, double* out, Index out_stride) {
  const std::size_t n = site_pos.size();
  if (n == 0) {
    for (Index x = 0; x < R; ++x) out[x * out_stride] = kInf;
    return;
  }
  std::vector<std::size_t> v(n);
  std::vector<double> z(n + 1);
  std::size_t k = 0;
  v[0] = 0;
  z[0] = -kInf;
  z[1] = kInf;
  auto cross = [&](std::size_t q, std::size_t p) {
    const double fq = site_val[q] + site_pos[q] * site_pos[q];
    const double fp = site_val[p] + site_pos[p] * site_pos[p];
    return (fq - fp) / (2.0 * (site_pos[q] - site_pos[p]));
  };
  for (std::size_t q = 1; q < n; ++q) {
    double s = cross(q, v[k]);
    while (s <= z[k]) {
      --k;
      s = cross(q, v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  k = 0;
  for (Index x = 0; x < R; ++x) {
    const double xd = static_cast<double>(x);
    while (z[k + 1] < xd) ++k;
    const double dx = xd - site_pos[v[k]];
    out[x * out_stride] = dx * dx + site_val[v[k]];
  }
}

}  // namespace

PointSet::PointSet(int d, std::vector<double> flat) : d_(d), coords_(std::move(flat)) {
  if (d < 1) throw DomainError("point dimension must be >= 1");
  if (coords_.size() % static_cast<std::size_t>(d) != 0)
    throw DomainError("flat coordinate array is not a multiple of d");
}

void PointSet::add(std::span<const double> p) {
  if (static_cast<int>(p.size()) != d_) throw DomainError("point arity mismatch");
  coords_.insert(coords_.end(), p.begin(), p.end());
}

double torus_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("point arity mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double g = cyclic_coord_gap(x[k], y[k]);
    s += g * g;
  }
  return std::sqrt(s);
}

double one_sided_excess(const PointSet& a, const PointSet& b) {
  if (a.empty() || b.empty()) throw DomainError("distance to an empty set is undefined");
  if (a.d() != b.d()) throw DomainError("point sets differ in dimension");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double best = kInf;
    for (std::size_t j = 0; j < b.size() && best > 0.0; ++j)
      best = std::min(best, torus_distance(a.point(i), b.point(j)));
    worst = std::max(worst, best);
  }
  return worst;
}

double hausdorff_distance(const PointSet& a, const PointSet& b) {
  return one_sided_excess(a, b) + one_sided_excess(b, a);
}

std::vector<double> squared_distance_transform(const std::vector<bool>& mask, int d, Index R) {
  const Index cells = checked_cell_count(d, R);
  if (static_cast<Index>(mask.size()) != cells) throw DomainError("mask does not match R^d");
  std::vector<double> cur(static_cast<std::size_t>(cells));
  for (Index i = 0; i < cells; ++i) cur[static_cast<std::size_t>(i)] = mask[static_cast<std::size_t>(i)] ? 0.0 : kInf;
  std::vector<double> next(cur.size());
  std::vector<double> pos, val;
  Index stride = 1;
  for (int axis = d - 1; axis >= 0; --axis) {
    const Index block = stride * R;
    for (Index outer = 0; outer < cells; outer += block) {
      for (Index inner = 0; inner < stride; ++inner) {
        const Index base = outer + inner;
        pos.clear();
        val.clear();
        // Three periodic images make the 1-D transform cyclic.
        for (Index image = -1; image <= 1; ++image) {
          for (Index q = 0; q < R; ++q) {
            const double f = cur[static_cast<std::size_t>(base + q * stride)];
            if (f == kInf) continue;
            pos.push_back(static_cast<double>(q + image * R));
            val.push_back(f);
          }
        }
        envelope_1d(pos, val, R, next.data() + base, stride);
      }
    }
    cur.swap(next);
    stride *= R;
  }
  return cur;
}

double one_sided_excess(const std::vector<bool>& a, const std::vector<bool>& b, int d, Index R) {
  const bool a_empty = std::find(a.begin(), a.end(), true) == a.end();
  const bool b_empty = std::find(b.begin(), b.end(), true) == b.end();
  if (a_empty || b_empty) throw DomainError("distance to an empty set is undefined");
  const std::vector<double> dist2 = squared_distance_transform(b, d, R);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) worst = std::max(worst, dist2[i]);
  return std::sqrt(worst) / static_cast<double>(R);
}

double hausdorff_distance(const std::vector<bool>& a, const std::vector<bool>& b, int d, Index R) {
  return one_sided_excess(a, b, d, R) + one_sided_excess(b, a, d, R);
}

}  // namespace salemlab

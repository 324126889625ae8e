#pragma once

#include <span>
#include <vector>

#include "salemlab/grid/torus.hpp"

namespace salemlab {

// Points of 𝕋^d with coordinates in [0,1), stored flat.
class PointSet {
 public:
  explicit PointSet(int d) : d_(d) {}
  PointSet(int d, std::vector<double> flat);

  int d() const { return d_; }
  std::size_t size() const { return coords_.size() / static_cast<std::size_t>(d_); }
  bool empty() const { return coords_.empty(); }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
  }
  void add(std::span<const double> p);

 private:
  int d_;
  std::vector<double> coords_;
};

// Euclidean norm of the coordinatewise cyclic distances.
double torus_distance(std::span<const double> x, std::span<const double> y);

// sup_{x∈A} dist(x,B) and the two-sided sum
//   d(A,B) = sup_{x∈A} dist(x,B) + sup_{y∈B} dist(y,A).
double one_sided_excess(const PointSet& a, const PointSet& b);
double hausdorff_distance(const PointSet& a, const PointSet& b);

// Same metric for subsets of the grid {j/R}^d given as membership masks,
// via an exact separable squared-distance transform (O(d·R^d)).
double one_sided_excess(const std::vector<bool>& a, const std::vector<bool>& b, int d, Index R);
double hausdorff_distance(const std::vector<bool>& a, const std::vector<bool>& b, int d, Index R);

// Squared cyclic distance (in cells²) from every cell to the nearest member.
std::vector<double> squared_distance_transform(const std::vector<bool>& mask, int d, Index R);

}  // namespace salemlab

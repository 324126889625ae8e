#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "salemlab/grid/torus.hpp"

namespace salemlab {

using Complex = std::complex<double>;

// Nonnegative measure on Γ_N^d with rational masses count(u)/denominator.
// Integer-count measures (σ_m) have denominator 1; μ_m = σ_m/m keeps the
// counts and sets denominator m, so every mass stays exact.
class AtomicMeasure {
 public:
  explicit AtomicMeasure(TorusGrid grid);
  AtomicMeasure(TorusGrid grid, std::vector<std::int64_t> counts, std::int64_t denominator = 1);

  static AtomicMeasure delta(TorusGrid grid, Index at = 0, std::int64_t count = 1);
  // One unit atom per listed index; repeated indices stack.
  static AtomicMeasure from_atoms(TorusGrid grid, std::span<const Index> atoms);
  // τ_N: mass N^{-d} on every lattice point.
  static AtomicMeasure uniform(TorusGrid grid);

  const TorusGrid& grid() const { return grid_; }
  int d() const { return grid_.d(); }
  Index N() const { return grid_.N(); }

  std::span<const std::int64_t> counts() const { return counts_; }
  std::int64_t count(Index u) const { return counts_[static_cast<std::size_t>(u)]; }
  std::int64_t denominator() const { return denominator_; }
  std::int64_t total_count() const { return total_count_; }

  double mass(Index u) const {
    return static_cast<double>(counts_[static_cast<std::size_t>(u)]) /
           static_cast<double>(denominator_);
  }
  double total_mass() const {
    return static_cast<double>(total_count_) / static_cast<double>(denominator_);
  }
  std::int64_t max_count() const;

  // Same counts with the denominator multiplied by `factor`.
  AtomicMeasure divided_by(std::int64_t factor) const;
  // Normalized to total mass 1 (denominator = total count).
  AtomicMeasure probability() const;

  std::vector<Index> support() const;
  std::vector<double> masses() const;

  bool operator==(const AtomicMeasure& other) const;

 private:
  TorusGrid grid_;
  std::vector<std::int64_t> counts_;
  std::int64_t denominator_ = 1;
  std::int64_t total_count_ = 0;
};

// Real samples on {j/R}^d, row-major.
class GridFunction {
 public:
  GridFunction(int d, Index R);
  GridFunction(int d, Index R, std::vector<double> values);

  static GridFunction constant(int d, Index R, double value);

  int d() const { return d_; }
  Index R() const { return R_; }
  Index size() const { return static_cast<Index>(values_.size()); }
  std::span<const double> values() const { return values_; }
  std::span<double> values_mut() { return values_; }
  double operator[](Index j) const { return values_[static_cast<std::size_t>(j)]; }

  double mean() const;
  double max() const;
  double min() const;

 private:
  int d_;
  Index R_;
  std::vector<double> values_;
};

// Fourier coefficients over the window {−⌊R/2⌋,…,⌈R/2⌉−1}^d. Storage is in
// transform order (index k holds frequency centered(k)); use `at` with
// signed frequencies.
class Spectrum {
 public:
  Spectrum(int d, Index R, std::vector<Complex> coeffs);

  int d() const { return d_; }
  Index R() const { return R_; }
  Index size() const { return static_cast<Index>(coeffs_.size()); }
  std::span<const Complex> coeffs() const { return coeffs_; }

  Complex at(std::span<const Index> freq) const;
  Complex at(Index freq) const;  // d == 1 shorthand
  Complex operator[](Index storage) const { return coeffs_[static_cast<std::size_t>(storage)]; }

  // Signed frequency vector of a storage slot.
  std::vector<Index> frequency(Index storage) const;
  void frequency(Index storage, std::span<Index> out) const;
  double frequency_norm(Index storage) const;

  Index window_low() const { return -(R_ / 2); }
  Index window_high() const { return R_ - R_ / 2 - 1; }

 private:
  int d_;
  Index R_;
  std::vector<Complex> coeffs_;
};

// Half-open cyclic cube with lattice corner and s cells per axis.
struct Cube {
  std::vector<Index> corner;
  Index side = 1;

  double measure(Index N) const;
};

}  // namespace salemlab

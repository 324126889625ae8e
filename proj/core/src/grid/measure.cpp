#include "salemlab/grid/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "salemlab/errors.hpp"

namespace salemlab {

AtomicMeasure::AtomicMeasure(TorusGrid grid)
    : grid_(grid), counts_(static_cast<std::size_t>(grid.cell_count()), 0) {}

AtomicMeasure::AtomicMeasure(TorusGrid grid, std::vector<std::int64_t> counts,
                             std::int64_t denominator)
    : grid_(grid), counts_(std::move(counts)), denominator_(denominator) {
  if (static_cast<Index>(counts_.size()) != grid_.cell_count())
    throw DomainError("count array does not match the grid");
  if (denominator_ < 1) throw DomainError("measure denominator must be positive");
  for (std::int64_t c : counts_) {
    if (c < 0) throw DomainError("atomic masses must be nonnegative");
    if (__builtin_add_overflow(total_count_, c, &total_count_))
      throw CapacityError("total count overflows 64-bit integers");
  }
}

AtomicMeasure AtomicMeasure::delta(TorusGrid grid, Index at, std::int64_t count) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(grid.cell_count()), 0);
  counts[static_cast<std::size_t>(wrap(at, grid.cell_count()))] = count;
  return AtomicMeasure(grid, std::move(counts));
}

AtomicMeasure AtomicMeasure::from_atoms(TorusGrid grid, std::span<const Index> atoms) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(grid.cell_count()), 0);
  for (Index a : atoms) {
    if (a < 0 || a >= grid.cell_count()) throw DomainError("atom index outside the grid");
    ++counts[static_cast<std::size_t>(a)];
  }
  return AtomicMeasure(grid, std::move(counts));
}

AtomicMeasure AtomicMeasure::uniform(TorusGrid grid) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(grid.cell_count()), 1);
  return AtomicMeasure(grid, std::move(counts), grid.cell_count());
}

std::int64_t AtomicMeasure::max_count() const {
  return counts_.empty() ? 0 : *std::max_element(counts_.begin(), counts_.end());
}

AtomicMeasure AtomicMeasure::divided_by(std::int64_t factor) const {
  if (factor < 1) throw DomainError("divisor must be positive");
  std::int64_t den = 0;
  if (__builtin_mul_overflow(denominator_, factor, &den))
    throw CapacityError("measure denominator overflows 64-bit integers");
  return AtomicMeasure(grid_, counts_, den);
}

AtomicMeasure AtomicMeasure::probability() const {
  if (total_count_ == 0) throw DomainError("cannot normalize the zero measure");
  return AtomicMeasure(grid_, counts_, total_count_);
}

std::vector<Index> AtomicMeasure::support() const {
  std::vector<Index> out;
  for (std::size_t i = 0; i < counts_.size(); ++i)
    if (counts_[i] != 0) out.push_back(static_cast<Index>(i));
  return out;
}

std::vector<double> AtomicMeasure::masses() const {
  std::vector<double> out(counts_.size());
  const double den = static_cast<double>(denominator_);
  for (std::size_t i = 0; i < counts_.size(); ++i) out[i] = static_cast<double>(counts_[i]) / den;
  return out;
}

bool AtomicMeasure::operator==(const AtomicMeasure& other) const {
  if (!(grid_ == other.grid_)) return false;
  // Compare count/denominator cross-multiplied so equal rationals match.
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    const __int128 lhs = static_cast<__int128>(counts_[i]) * other.denominator_;
    const __int128 rhs = static_cast<__int128>(other.counts_[i]) * denominator_;
    if (lhs != rhs) return false;
  }
  return true;
}

GridFunction::GridFunction(int d, Index R)
    : d_(d), R_(R), values_(static_cast<std::size_t>(checked_cell_count(d, R)), 0.0) {
  if (R < 2) throw DomainError("grid resolution must be >= 2");
}

GridFunction::GridFunction(int d, Index R, std::vector<double> values)
    : d_(d), R_(R), values_(std::move(values)) {
  if (R < 2) throw DomainError("grid resolution must be >= 2");
  if (static_cast<Index>(values_.size()) != checked_cell_count(d, R))
    throw DomainError("value array does not match R^d");
}

GridFunction GridFunction::constant(int d, Index R, double value) {
  GridFunction f(d, R);
  std::fill(f.values_.begin(), f.values_.end(), value);
  return f;
}

double GridFunction::mean() const {
  // Extended accumulator; sums of 10^7 doubles lose ~1e-9 in plain double.
  long double acc = 0.0L;
  for (double v : values_) acc += v;
  return static_cast<double>(acc / static_cast<long double>(values_.size()));
}

double GridFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }
double GridFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }

Spectrum::Spectrum(int d, Index R, std::vector<Complex> coeffs)
    : d_(d), R_(R), coeffs_(std::move(coeffs)) {
  if (static_cast<Index>(coeffs_.size()) != checked_cell_count(d, R))
    throw DomainError("coefficient array does not match R^d");
}

Complex Spectrum::at(std::span<const Index> freq) const {
  if (static_cast<int>(freq.size()) != d_) throw DomainError("frequency arity mismatch");
  return coeffs_[static_cast<std::size_t>(flat_index(freq, R_))];
}

Complex Spectrum::at(Index freq) const {
  if (d_ != 1) throw DomainError("scalar frequency requires d == 1");
  return coeffs_[static_cast<std::size_t>(wrap(freq, R_))];
}

void Spectrum::frequency(Index storage, std::span<Index> out) const {
  unflatten(storage, R_, out);
  for (Index& c : out) c = centered(c, R_);
}

std::vector<Index> Spectrum::frequency(Index storage) const {
  std::vector<Index> out(static_cast<std::size_t>(d_));
  frequency(storage, out);
  return out;
}

double Spectrum::frequency_norm(Index storage) const {
  double s = 0.0;
  for (int k = 0; k < d_; ++k) {
    const double c = static_cast<double>(centered(storage % R_, R_));
    s += c * c;
    storage /= R_;
  }
  return std::sqrt(s);
}

double Cube::measure(Index N) const {
  return std::pow(static_cast<double>(side) / static_cast<double>(N),
                  static_cast<double>(corner.size()));
}

}  // namespace salemlab

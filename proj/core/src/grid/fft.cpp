#include "salemlab/grid/fft.hpp"

#include <fftw3.h>

#include <limits>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "salemlab/errors.hpp"

namespace salemlab {

namespace {

// FFTW's planner is not thread-safe; execution with the new-array interface
// is. Plans are created once per (d, R, sign) and kept for the process.
struct PlanCache {
  std::mutex mu;
  std::map<std::tuple<int, Index, int>, fftw_plan> plans;

  fftw_plan get(int d, Index R, FftSign sign) {
    const auto key = std::make_tuple(d, R, sign == FftSign::forward ? 0 : 1);
    std::lock_guard<std::mutex> lock(mu);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    std::vector<int> dims(static_cast<std::size_t>(d), static_cast<int>(R));
    const Index cells = checked_cell_count(d, R);
    fftw_complex* scratch = fftw_alloc_complex(static_cast<std::size_t>(cells));
    const int fsign = sign == FftSign::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan plan = fftw_plan_dft(d, dims.data(), scratch, scratch, fsign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (plan == nullptr) throw CapacityError("FFTW could not plan a transform of this size");
    plans.emplace(key, plan);
    return plan;
  }
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void fft_inplace(std::span<std::complex<double>> data, int d, Index R, FftSign sign) {
  if (R > static_cast<Index>(std::numeric_limits<int>::max()))
    throw CapacityError("transform length exceeds FFTW's int range");
  if (static_cast<Index>(data.size()) != checked_cell_count(d, R))
    throw DomainError("FFT buffer does not match R^d");
  fftw_plan plan = cache().get(d, R, sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace salemlab

#include <benchmark/benchmark.h>

#include "salemlab/grid/convolution.hpp"
#include "salemlab/grid/cubes.hpp"
#include "salemlab/grid/dft.hpp"
#include "salemlab/sampler/sample.hpp"

using namespace salemlab;

namespace {

AtomicMeasure sigma(int d, Index N, std::int64_t atoms, std::uint64_t seed = 7) {
  SampleConfig c{TorusGrid(d, N)};
  c.atom_count = atoms;
  c.seed = seed;
  return sample_points(c, 0).sigma();
}

void BM_DftMeasure1d(benchmark::State& st) {
  const Index N = st.range(0);
  const auto mu = sigma(1, N, floor_power(N, 0.5)).probability();
  for (auto _ : st) benchmark::DoNotOptimize(dft(mu));
  st.SetComplexityN(N);
}
BENCHMARK(BM_DftMeasure1d)->Arg(101)->Arg(1009)->Arg(10007)->Arg(100003)->Complexity(benchmark::oNLogN);

void BM_DftMeasure2d(benchmark::State& st) {
  const Index N = st.range(0);
  const auto mu = sigma(2, N, N).probability();
  for (auto _ : st) benchmark::DoNotOptimize(dft(mu));
}
BENCHMARK(BM_DftMeasure2d)->Arg(64)->Arg(256)->Arg(1024);

// FFT route with exact rounding against the sparse integer fallback
void BM_ConvPowerFft(benchmark::State& st) {
  const Index N = st.range(0);
  const auto s = sigma(1, N, floor_power(N, 0.5));
  for (auto _ : st) benchmark::DoNotOptimize(conv_power(s, 3));
}
BENCHMARK(BM_ConvPowerFft)->Arg(101)->Arg(1009)->Arg(10007);

void BM_ConvolveDirect(benchmark::State& st) {
  const Index N = st.range(0);
  const auto s = sigma(1, N, floor_power(N, 0.5));
  const auto s2 = convolve_direct(s, s);
  for (auto _ : st) benchmark::DoNotOptimize(convolve_direct(s2, s));
}
BENCHMARK(BM_ConvolveDirect)->Arg(101)->Arg(1009)->Arg(10007);

void BM_GridConvolve(benchmark::State& st) {
  const Index R = st.range(0);
  GridFunction f(1, R), g(1, R);
  for (Index i = 0; i < R; ++i) {
    f.values_mut()[static_cast<std::size_t>(i)] = double(i % 7);
    g.values_mut()[static_cast<std::size_t>(i)] = double(i % 5);
  }
  for (auto _ : st) benchmark::DoNotOptimize(convolve(f, g));
}
BENCHMARK(BM_GridConvolve)->Arg(1024)->Arg(1 << 16)->Arg(1 << 18);

// summed-area maximum over every corner
void BM_MaxCubeMass(benchmark::State& st) {
  const Index N = st.range(0);
  const auto p = conv_power(sigma(1, N, floor_power(N, 0.5)), 2);
  for (auto _ : st) benchmark::DoNotOptimize(max_cube_mass(p, N / 8));
  st.SetComplexityN(N);
}
BENCHMARK(BM_MaxCubeMass)->Arg(1009)->Arg(10007)->Arg(100003)->Complexity(benchmark::oN);

void BM_MaxCubeMass2d(benchmark::State& st) {
  const Index N = st.range(0);
  const auto p = conv_power(sigma(2, N, N), 2);
  for (auto _ : st) benchmark::DoNotOptimize(max_cube_mass(p, N / 8));
}
BENCHMARK(BM_MaxCubeMass2d)->Arg(64)->Arg(256);

}  // namespace

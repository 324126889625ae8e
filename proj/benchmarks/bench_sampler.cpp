#include <benchmark/benchmark.h>

#include <cmath>

#include "salemlab/parallel.hpp"
#include "salemlab/sampler/certify.hpp"
#include "salemlab/sampler/increment.hpp"
#include "salemlab/sampler/trials.hpp"

using namespace salemlab;

namespace {

Sample draw(Index N, std::int64_t atoms, std::uint64_t seed = 3) {
  SampleConfig c{TorusGrid(1, N)};
  c.atom_count = atoms;
  c.seed = seed;
  return sample_points(c, 0);
}

void BM_SamplePoints(benchmark::State& st) {
  const Index N = st.range(0);
  SampleConfig c{TorusGrid(1, N)};
  c.atom_count = floor_power(N, 0.5);
  std::int64_t t = 0;
  for (auto _ : st) benchmark::DoNotOptimize(sample_points(c, t++));
}
BENCHMARK(BM_SamplePoints)->Arg(1009)->Arg(100003);

// exact binomial increment per appended atom, orders up to 3
void BM_PowerLadder(benchmark::State& st) {
  const Index N = st.range(0);
  const Sample s = draw(N, static_cast<std::int64_t>(std::sqrt(N * std::log(double(N)))));
  for (auto _ : st) {
    PowerLadder ladder(s.grid, 3);
    for (Index x : s.atoms) ladder.push(x);
    benchmark::DoNotOptimize(ladder.power(3).max_count());
  }
}
BENCHMARK(BM_PowerLadder)->Arg(251)->Arg(509)->Arg(1009);

void BM_CertifyFourierDecay(benchmark::State& st) {
  const Index N = st.range(0);
  const AtomicMeasure s = draw(N, floor_power(N, 0.5)).sigma();
  for (auto _ : st) benchmark::DoNotOptimize(certify_fourier_decay(s, 1));
}
BENCHMARK(BM_CertifyFourierDecay)->Arg(1009)->Arg(100003);

void BM_CertifyCubeFixed(benchmark::State& st) {
  const Index N = st.range(0);
  const Sample s = draw(N, 31);
  CubeParams p;
  p.eps = Rational(1, 200);
  for (auto _ : st) benchmark::DoNotOptimize(certify_cube_regularity(s, 2, p, 1));
}
BENCHMARK(BM_CertifyCubeFixed)->Arg(1009);

void BM_CertifyUniformity(benchmark::State& st) {
  const Index N = st.range(0);
  const Sample s = draw(N, static_cast<std::int64_t>(std::sqrt(N * std::log(double(N)))));
  for (auto _ : st) benchmark::DoNotOptimize(certify_uniformity(s, 3, 1, 1, 20.0));
}
BENCHMARK(BM_CertifyUniformity)->Arg(251)->Arg(509)->Arg(1009);

// whole trial loop, serial against the default worker pool
void BM_RunTrials(benchmark::State& st) {
  set_worker_count(static_cast<int>(st.range(0)));
  TrialPlan plan{SampleConfig::make(TorusGrid(1, 1009), 0.5, 1, 50, 1, 2), {}, default_calibration()};
  plan.events = {{EventKind::fourier_decay}, {EventKind::cube_log, 2}};
  for (auto _ : st) benchmark::DoNotOptimize(run_trials(plan));
  set_worker_count(0);
}
BENCHMARK(BM_RunTrials)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

}  // namespace

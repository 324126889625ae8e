#include <benchmark/benchmark.h>

#include <vector>

#include "salemlab/concentration/concentration.hpp"
#include "salemlab/restriction/restriction.hpp"
#include "salemlab/sampler/rng.hpp"
#include "salemlab/sampler/sample.hpp"
#include "salemlab/transference/transference.hpp"

using namespace salemlab;

namespace {

AtomicMeasure probability(Index N, std::int64_t atoms, std::uint64_t seed = 5) {
  SampleConfig c{TorusGrid(1, N)};
  c.atom_count = atoms;
  c.seed = seed;
  return sample_points(c, 0).sigma().probability();
}

std::vector<Complex> random_g(Index n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Complex> g(static_cast<std::size_t>(n));
  for (auto& z : g) {
    const double re = 2 * rng.unit() - 1;
    z = Complex(re, 2 * rng.unit() - 1);
  }
  return g;
}

void BM_RestrictionCheck(benchmark::State& st) {
  const Index N = st.range(0);
  const auto mu = probability(N, floor_power(N, 0.5));
  const auto g = random_g(N, 9);
  for (auto _ : st) benchmark::DoNotOptimize(restriction_check(mu, g, 3));
}
BENCHMARK(BM_RestrictionCheck)->Arg(64)->Arg(1009)->Arg(10007);

// extremizer search with duality upper bounds
void BM_EstimateAp(benchmark::State& st) {
  const Index N = st.range(0);
  const auto mu = probability(N, floor_power(N, 0.5));
  ApOptions o;
  o.restarts = 4;
  for (auto _ : st) benchmark::DoNotOptimize(estimate_Ap(mu, 4.0 / 3.0, o));
}
BENCHMARK(BM_EstimateAp)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_BuildFm(benchmark::State& st) {
  const FmParams fp{st.range(0), 3, 0.5, 0.6, 3};
  const Index N = fp.m * fp.m * fp.m;
  const auto mu = probability(N, floor_power(N, fp.beta));
  const Index R = fm_resolution(fp, 1, 4);
  for (auto _ : st) benchmark::DoNotOptimize(build_F_m(mu, fp, R));
}
BENCHMARK(BM_BuildFm)->Arg(5)->Arg(7)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_MonteCarloTail(benchmark::State& st) {
  TailSpec s;
  s.kind = st.range(0) ? TailSpec::Kind::character : TailSpec::Kind::rademacher;
  s.m = s.kind == TailSpec::Kind::character ? 31 : 100;
  s.trials = 10000;
  for (auto _ : st) benchmark::DoNotOptimize(monte_carlo_tail(s, {0.1, 0.3, 0.5}));
  st.SetItemsProcessed(st.iterations() * s.trials);
}
BENCHMARK(BM_MonteCarloTail)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SmallSummation(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(small_summation(50, 0.1, 12));
}
BENCHMARK(BM_SmallSummation);

}  // namespace

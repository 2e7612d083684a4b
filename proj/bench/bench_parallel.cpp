// Serial reference vs OpenMP for the two parallel kernels: the replica map
// and the exact-max rho scan.

#include <benchmark/benchmark.h>

#include <vector>

#include "degseq/coupling.hpp"
#include "degseq/generators.hpp"
#include "degseq/kernels.hpp"
#include "degseq/parallel.hpp"
#include "degseq/samplers.hpp"

namespace {

using degseq::Execution;

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::kSerial : Execution::kParallel;
}

void BM_SeqSampleReplicas(benchmark::State& state) {
  const auto d = degseq::regular_sequence(500, 10).d;
  const auto exec = exec_of(state);
  for (auto _ : state) {
    auto graphs = degseq::map_replicas(
        32, 1,
        [&](std::size_t, degseq::RandomSource& rng) {
          return degseq::seq_sample_d(d, degseq::SeqSampleMode::kAsymptotic, rng).graph.num_edges();
        },
        exec);
    benchmark::DoNotOptimize(graphs);
  }
  state.SetLabel(exec == Execution::kSerial ? "serial" : "openmp");
}
BENCHMARK(BM_SeqSampleReplicas)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CouplingReplicas(benchmark::State& state) {
  const auto d = degseq::regular_sequence(200, 8).d;
  const degseq::CouplingEngine engine(d, degseq::make_params(d, 0.1, 0.5, 0.2));
  const auto exec = exec_of(state);
  for (auto _ : state) {
    auto runs = degseq::map_replicas(
        32, 2, [&](std::size_t, degseq::RandomSource& rng) { return engine.run(rng).trace.fallback; }, exec);
    benchmark::DoNotOptimize(runs);
  }
  state.SetLabel(exec == Execution::kSerial ? "serial" : "openmp");
}
BENCHMARK(BM_CouplingReplicas)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MaxAsymptoticRho(benchmark::State& state) {
  const auto d = degseq::regular_sequence(static_cast<std::size_t>(state.range(1)), 40).d;
  degseq::RandomSource rng(3, 0);
  const std::vector<std::size_t> at{d.sum() / 4};
  const auto g = degseq::seq_sample_d(d, degseq::SeqSampleMode::kAsymptotic, rng, at).checkpoints[0].second;
  std::vector<std::uint32_t> t(d.size());
  std::uint64_t total = 0;
  for (std::size_t v = 0; v < d.size(); ++v) {
    t[v] = d[v] - static_cast<std::uint32_t>(g.degree(static_cast<degseq::Vertex>(v)));
    total += t[v];
  }
  const auto exec = exec_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(degseq::kernels::max_asymptotic_rho(d.values(), t, total, g, exec));
  }
  state.SetLabel(exec == Execution::kSerial ? "serial" : "openmp");
}
BENCHMARK(BM_MaxAsymptoticRho)
    ->Args({0, 1000})
    ->Args({1, 1000})
    ->Args({0, 4000})
    ->Args({1, 4000})
    ->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

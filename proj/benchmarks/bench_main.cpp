#include "rmc/errw.hpp"
#include "rmc/inference.hpp"
#include "rmc/prior_density.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using namespace rmc;

SimplexPoint uniform_point(const Graph& g) {
  return SimplexPoint(std::vector<double>(g.edge_count(), 1.0 / static_cast<double>(g.edge_count())));
}

void BM_LogDetMatrix(benchmark::State& state) {
  const Graph g = graphs::complete(static_cast<std::size_t>(state.range(0)), true);
  const SimplexPoint x = uniform_point(g);
  for (auto _ : state) benchmark::DoNotOptimize(log_det_cycle_matrix(g, x, DetMethod::kMatrix));
}
BENCHMARK(BM_LogDetMatrix)->DenseRange(3, 6);

void BM_LogDetSpanningTrees(benchmark::State& state) {
  const Graph g = graphs::complete(static_cast<std::size_t>(state.range(0)), true);
  const SimplexPoint x = uniform_point(g);
  for (auto _ : state) benchmark::DoNotOptimize(log_det_cycle_matrix(g, x, DetMethod::kSpanningTrees));
}
BENCHMARK(BM_LogDetSpanningTrees)->DenseRange(3, 5);

void BM_LogDensity(benchmark::State& state) {
  const Graph g = graphs::complete(4, true);
  const PriorDensity phi(g, PriorParams::uniform(g, 0));
  const SimplexPoint x = uniform_point(g);
  for (auto _ : state) benchmark::DoNotOptimize(phi.log_density(x));
}
BENCHMARK(BM_LogDensity);

void BM_ErrwWalkers(benchmark::State& state) {
  const Graph g = graphs::triangle();
  const PriorParams a = PriorParams::uniform(g, 0);
  const auto steps = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(posterior_edge_frequency_samples(g, a, steps, 100, RandomSource(1), 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(steps) * 100);
}
BENCHMARK(BM_ErrwWalkers)->Arg(1000)->Arg(10000);

void BM_HlaMarginals(benchmark::State& state) {
  const CountTable t({"a", "c", "g", "t"},
                     {91, 160, 261, 108, 213, 351, 161, 249, 251, 224, 388, 201, 66, 239, 254, 152});
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_marginal(model::Reversible{}, t));
    benchmark::DoNotOptimize(log_marginal(model::FullMarkov{}, t));
  }
}
BENCHMARK(BM_HlaMarginals);

}  // namespace
BENCHMARK_MAIN();

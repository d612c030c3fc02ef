#include <benchmark/benchmark.h>

#include <vector>

#include "spiral/cost_model.h"
#include "spiral/topology.h"

namespace spiral {
namespace {

void BM_BuildNetwork(benchmark::State& state) {
  const int nc = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_network(8 * nc, nc, 7));
  }
}
BENCHMARK(BM_BuildNetwork)->RangeMultiplier(4)->Range(4, 256);

void BM_MeterIteration(benchmark::State& state) {
  NetworkInstance net = build_network(512, 64, 3);
  const auto algorithm = static_cast<Algorithm>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(meter_iteration(net, algorithm, {}, 1));
  }
}
BENCHMARK(BM_MeterIteration)
    ->Arg(static_cast<int>(Algorithm::kSpiral))
    ->Arg(static_cast<int>(Algorithm::kInCluster));

void BM_ScalingStudy(benchmark::State& state) {
  std::vector<SweepPoint> points{{32, 4}, {128, 16}, {512, 64}};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  for (auto _ : state) {
    benchmark::DoNotOptimize(scaling_study(points, seeds, 1, MeteringParams{}));
  }
}
BENCHMARK(BM_ScalingStudy)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace spiral

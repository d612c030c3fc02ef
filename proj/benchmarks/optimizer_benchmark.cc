#include <benchmark/benchmark.h>

#include "spiral/analysis.h"
#include "spiral/optimizer.h"
#include "spiral/problem.h"

namespace spiral {
namespace {

ProblemInstance make_problem(int n, int cluster_count) {
  ProblemInstance p;
  p.network = build_network(n, cluster_count, 1);
  p.data = generate_observations(p.network, 10, 10.0, 1.0, 1);
  p.feasible = FeasibleSet::box(1, -100.0, 100.0);
  return p;
}

void BM_ClusterPass(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  ProblemInstance p = make_problem(size * 2, 2);
  const Estimate start = Estimate::scalar(0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cluster_pass(p, 0, start, 0.007));
  }
  state.SetItemsProcessed(state.iterations() * size);
}
BENCHMARK(BM_ClusterPass)->RangeMultiplier(4)->Range(8, 512);

void BM_Run(benchmark::State& state) {
  const auto algorithm = static_cast<Algorithm>(state.range(0));
  ProblemInstance p = make_problem(64, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(p, algorithm, StepSizeSchedule::fixed(0.007),
                                 500, Estimate::scalar(0.0)));
  }
  state.SetLabel(std::string(to_string(algorithm)));
}
BENCHMARK(BM_Run)
    ->Arg(static_cast<int>(Algorithm::kSpiral))
    ->Arg(static_cast<int>(Algorithm::kInCluster))
    ->Arg(static_cast<int>(Algorithm::kCentralized))
    ->Unit(benchmark::kMillisecond);

void BM_RunThreads(benchmark::State& state) {
  ProblemInstance p = make_problem(4096, 64);
  RunOptions opts;
  opts.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(p, Algorithm::kSpiral,
                                 StepSizeSchedule::fixed(0.007), 20,
                                 Estimate::scalar(0.0), opts));
  }
}
BENCHMARK(BM_RunThreads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Analyze(benchmark::State& state) {
  ProblemInstance p = make_problem(64, 8);
  auto sched = StepSizeSchedule::fixed(0.007);
  auto traj = run(p, Algorithm::kSpiral, sched, 500, Estimate::scalar(0.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyze(p, traj, sched));
  }
}
BENCHMARK(BM_Analyze)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace spiral

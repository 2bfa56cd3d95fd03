// Serial reference kernels against their OpenMP counterparts.
//   ./csistp_bench --benchmark_filter=closure

#include <benchmark/benchmark.h>

#include "csistp/apx.hpp"
#include "csistp/experiment.hpp"
#include "csistp/quotient.hpp"
#include "csistp/verify.hpp"

using namespace csistp;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(1) ? Execution::parallel : Execution::serial;
}

void label(benchmark::State& state) { state.SetLabel(state.range(1) ? "parallel" : "serial"); }

void BM_MetricClosure(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = gen_random_metric({.n = n, .k = 2, .internal_fraction = 0, .seed = 1});
  for (auto _ : state) benchmark::DoNotOptimize(metric_closure(inst.graph, mode(state)));
  label(state);
}
BENCHMARK(BM_MetricClosure)->ArgsProduct({{100, 300}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_ContractClusters(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = gen_euclidean({.n = n, .k = n / 10, .steiner_fraction = 0.5, .seed = 2});
  for (auto _ : state) benchmark::DoNotOptimize(contract_clusters(inst.graph, inst.clusters, mode(state)));
  label(state);
}
BENCHMARK(BM_ContractClusters)->ArgsProduct({{200, 600}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_SolveApx(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = gen_euclidean({.n = n, .k = 8, .steiner_fraction = 0.3, .internal_fraction = 0.3, .seed = 3});
  const KmbSolver kmb;
  for (auto _ : state) benchmark::DoNotOptimize(solve_apx(inst, kmb, EndpointRule::lexicographic, mode(state)));
  label(state);
}
BENCHMARK(BM_SolveApx)->ArgsProduct({{200, 500}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_ExactOracle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = gen_euclidean({.n = n, .k = 2, .steiner_fraction = 0.3, .internal_fraction = 0.3, .seed = 4});
  for (auto _ : state) benchmark::DoNotOptimize(exact_csistp(inst, n, mode(state)));
  label(state);
}
BENCHMARK(BM_ExactOracle)->ArgsProduct({{8, 9}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_RunExperiment(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.cells = {{InstanceKind::euclidean, 8, 2, static_cast<std::size_t>(state.range(0)), 0.25, 0.3}};
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg, mode(state)));
  label(state);
}
BENCHMARK(BM_RunExperiment)->ArgsProduct({{16}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <vector>

#include "memrelax/batch.hpp"

using namespace memrelax;

namespace {

std::vector<SimulationJob> jobs(int n) {
  std::vector<SimulationJob> out;
  const PulseTrain bt(1.0, 0.2, 0.2, 1.0, -1.0);
  const PulseTrain ct(1.0, 0.4, 0.25, 2.2, -2.2);
  const ThresholdCircuit c(0.05, 1.0, -0.7, 2000.0, 2000.0, 10000.0);
  for (int i = 0; i < n; ++i) {
    const double x0 = (i % 11) / 10.0;
    if (i % 2)
      out.push_back({c, ct, x0, 200.0, {16, 8}});
    else
      out.push_back({BiolekModel(0.05, -0.1), bt, x0, 200.0, {16, 8}});
  }
  return out;
}

void BM_SimulateBatch(benchmark::State& state) {
  const auto j = jobs(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_batch(j));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SimulateBatchSerial(benchmark::State& state) {
  const auto j = jobs(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_batch_serial(j));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

struct Grid {
  std::vector<double> r0;
  std::vector<double> times;
};

Grid grid(int n) {
  Grid g;
  for (int i = 0; i < 5; ++i) g.r0.push_back(2000.0 + 2000.0 * i);
  for (int j = 0; j < n; ++j) g.times.push_back(1500.0 * j / n);
  return g;
}

const ThresholdCircuit kCircuit(0.05, 1.0, -0.7, 2000.0, 2000.0, 10000.0);

void BM_CircuitGrid(benchmark::State& state) {
  const auto g = grid(static_cast<int>(state.range(0)));
  const auto p = CircuitAveragedParams::from(kCircuit, PulseTrain(1.0, 0.4, 0.25, 2.2, -2.2));
  for (auto _ : state) benchmark::DoNotOptimize(circuit_solution_grid(kCircuit, p, g.r0, g.times));
}

void BM_CircuitGridSerial(benchmark::State& state) {
  const auto g = grid(static_cast<int>(state.range(0)));
  const auto p = CircuitAveragedParams::from(kCircuit, PulseTrain(1.0, 0.4, 0.25, 2.2, -2.2));
  for (auto _ : state) benchmark::DoNotOptimize(circuit_solution_grid_serial(kCircuit, p, g.r0, g.times));
}

}  // namespace

BENCHMARK(BM_SimulateBatch)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SimulateBatchSerial)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CircuitGrid)->Arg(601)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CircuitGridSerial)->Arg(601)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

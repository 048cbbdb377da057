#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "allgood/oracle.hpp"
#include "allgood/solver.hpp"
#include "allgood/tracker.hpp"

namespace {

allgood::BanditInstance random_instance(std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> mu(k);
  for (auto& m : mu) m = u(rng);
  return allgood::BanditInstance(std::move(mu), 0.1);
}

void BM_Oracle(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto inst = random_instance(k, 1);
  const allgood::ResponseOracle oracle(inst);
  const std::vector<double> w(k, 1.0 / static_cast<double>(k));
  for (auto _ : state) benchmark::DoNotOptimize(oracle(w).cost);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Oracle)->RangeMultiplier(2)->Range(2, 64)->Complexity();

void BM_MirrorAscent(benchmark::State& state) {
  const auto inst = random_instance(static_cast<std::size_t>(state.range(0)), 2);
  allgood::SolveConfig cfg;
  cfg.target_accuracy = 1e-300;
  cfg.max_iterations = 10000;
  for (auto _ : state) benchmark::DoNotOptimize(allgood::mirror_ascent(inst, cfg).value);
  state.SetItemsProcessed(state.iterations() * cfg.max_iterations);
}
BENCHMARK(BM_MirrorAscent)->Arg(2)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_TrackAndStop(benchmark::State& state) {
  const allgood::BanditInstance inst({0.9, 0.7, 0.6, 0.3}, 0.1);
  std::uint64_t seed = 0;
  std::int64_t pulls = 0;
  for (auto _ : state) {
    const auto rec = allgood::run(inst, 0.01, allgood::TrackerConfig{}, seed++);
    pulls += rec.stopping_time;
  }
  state.counters["pulls/run"] =
      benchmark::Counter(static_cast<double>(pulls), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_TrackAndStop)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

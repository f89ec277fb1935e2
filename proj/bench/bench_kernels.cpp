#include <benchmark/benchmark.h>

#include <sstream>

#include "causelab/enumerate.hpp"
#include "causelab/hunter.hpp"
#include "causelab/theorems.hpp"

using namespace causelab;

namespace {

Execution exec_for(int workers) {
  return workers > 1 ? Execution{Backend::openmp, workers} : Execution{};
}

// A five-element model with a random measure: enough region pairs to split.
const Model& five_element_model() {
  static const Model m = [] {
    const auto all = enumerate_causets(5);
    const HistorySpace s(all[all.size() / 3], 2);
    return Model(s, DomMap{}, MeasureTable::random(s, 3, 10), Model::AxiomCheck::skip);
  }();
  return m;
}

void BM_CheckPrinciple(benchmark::State& state) {
  const auto& m = five_element_model();
  const auto exec = exec_for(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_principle(m, Principle::so2, {}, exec).violations);
  }
}
BENCHMARK(BM_CheckPrinciple)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_RegionSweep(benchmark::State& state) {
  const auto exec = exec_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(region_theorem_sweep(6, exec).checked);
}
BENCHMARK(BM_RegionSweep)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_Hunt(benchmark::State& state) {
  SearchConfig cfg;
  cfg.max_elements = 4;
  cfg.measures_per_model = 5;
  cfg.seed = 7;
  cfg.exec = exec_for(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    std::ostringstream out;
    benchmark::DoNotOptimize(hunt(cfg, out).models);
  }
}
BENCHMARK(BM_Hunt)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

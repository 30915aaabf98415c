#include <benchmark/benchmark.h>

#include "cotwin/catalog.hpp"
#include "cotwin/homotopy.hpp"
#include "cotwin/twinner.hpp"

using namespace cotwin;

namespace {

void BM_EnumerateWeyl(benchmark::State& state, const char* type) {
  const auto M = CoxeterMatrix::of_type(type);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_weyl(M).size());
}
BENCHMARK_CAPTURE(BM_EnumerateWeyl, B3, "B3");
BENCHMARK_CAPTURE(BM_EnumerateWeyl, A4, "A4");

// All pairwise Weyl distances of a building.
void BM_DeltaAllPairs(benchmark::State& state, BuildingPtr (*gen)(int), int q) {
  const auto b = gen(q);
  for (auto _ : state) {
    std::uint64_t acc = 0;
    for (Chamber x = 0; x < b->size(); ++x) {
      for (Chamber y = 0; y < b->size(); ++y) acc += b->delta(x, y).id;
    }
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * b->size() * b->size());
}
BENCHMARK_CAPTURE(BM_DeltaAllPairs, pg2_3, gen_pg2, 3);
BENCHMARK_CAPTURE(BM_DeltaAllPairs, sp4_2, gen_sp4, 2);

void BM_GenBuilding(benchmark::State& state, BuildingPtr (*gen)(int), int q) {
  for (auto _ : state) benchmark::DoNotOptimize(gen(q)->size());
}
BENCHMARK_CAPTURE(BM_GenBuilding, pg3_2, gen_pg3, 2)->Unit(benchmark::kMillisecond);

void BM_CheckLco(benchmark::State& state) {
  const auto b = gen_pg2(3);
  for (auto _ : state) benchmark::DoNotOptimize(check_lco(*b).checked);
}
BENCHMARK(BM_CheckLco)->Unit(benchmark::kMillisecond);

void BM_Atlas(benchmark::State& state, BuildingPtr (*gen)(int), int q) {
  const auto b = gen(q);
  const Codistance f = from_opposite_chamber(b, 0);
  for (auto _ : state) benchmark::DoNotOptimize(atlas_component(f).size());
}
BENCHMARK_CAPTURE(BM_Atlas, pg2_2, gen_pg2, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Atlas, pg2_3, gen_pg2, 3)->Unit(benchmark::kMillisecond);

void BM_AssembleTwin(benchmark::State& state) {
  const auto atlas = atlas_component(from_opposite_chamber(gen_pg2(2), 0));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_twin(atlas).ok());
}
BENCHMARK(BM_AssembleTwin)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "critbound/bounds.hpp"
#include "critbound/combinatorial_map.hpp"
#include "critbound/enumeration.hpp"

using namespace critbound;

namespace {

CombinatorialMap random_connected_map(std::size_t edges, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  while (true) {
    Permutation sigma(2 * edges);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    auto m = CombinatorialMap::with_standard_alpha(sigma);
    if (component_count(m) == 1) return m;
  }
}

void BM_FaceCount(benchmark::State& state) {
  const auto m = random_connected_map(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(face_count(m));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 2);
}
BENCHMARK(BM_FaceCount)->RangeMultiplier(8)->Range(8, 1 << 15);

void BM_CanonicalForm(benchmark::State& state) {
  const auto m = random_connected_map(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(m));
}
BENCHMARK(BM_CanonicalForm)->RangeMultiplier(4)->Range(4, 256);

void BM_CatalanExact(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bounds::catalan_exact(state.range(0)));
}
BENCHMARK(BM_CatalanExact)->RangeMultiplier(10)->Range(10, 100000);

void BM_CountingBoundExact(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(bounds::prop33_bound({2, 0.0}, bounds::Rounding::kExact));
  }
}
BENCHMARK(BM_CountingBoundExact)->Unit(benchmark::kMillisecond);

void BM_VerifyChain(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bounds::verify_chain({1000, 5.0}));
}
BENCHMARK(BM_VerifyChain);

void BM_PlaneTrees(benchmark::State& state) {
  for (auto _ : state) {
    std::uint64_t count = 0;
    enumeration::for_each_plane_tree(state.range(0), [&](const enumeration::PlaneTree&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_PlaneTrees)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

void BM_Census(benchmark::State& state) {
  enumeration::ConstructionBudget b;
  b.genus_target = 1;
  b.max_edges = state.range(0);
  b.max_vertices = b.max_edges + 1;
  b.max_degree = 2 * b.max_edges;
  for (auto _ : state) benchmark::DoNotOptimize(enumeration::generate_candidates(b));
}
BENCHMARK(BM_Census)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

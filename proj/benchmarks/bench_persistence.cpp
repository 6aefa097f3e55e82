#include <benchmark/benchmark.h>

#include "topoflux/datasets.hpp"
#include "topoflux/filtration.hpp"
#include "topoflux/persistence.hpp"

namespace {

using namespace topoflux;

void BM_DelaunayTriangulation(benchmark::State& state) {
  const auto cloud = generate_gaussian_cloud(static_cast<int>(state.range(0)), 2, 1);
  for (auto _ : state) {
    auto complex = delaunay_2d(cloud);
    benchmark::DoNotOptimize(complex);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DelaunayTriangulation)->Range(64, 4096);

void BM_WeakAlphaFiltration(benchmark::State& state) {
  const auto cloud = generate_gaussian_cloud(static_cast<int>(state.range(0)), 2, 1);
  for (auto _ : state) {
    auto filt = weak_alpha_filtration(cloud);
    benchmark::DoNotOptimize(filt);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WeakAlphaFiltration)->Range(64, 2048);

void BM_RipsFiltration(benchmark::State& state) {
  const auto cloud = generate_gaussian_cloud(static_cast<int>(state.range(0)), 3, 1);
  for (auto _ : state) {
    auto filt = vietoris_rips_filtration(cloud, 1);
    benchmark::DoNotOptimize(filt);
  }
}
BENCHMARK(BM_RipsFiltration)->Range(16, 128);

void BM_Reduction(benchmark::State& state) {
  const auto cloud = generate_gaussian_cloud(static_cast<int>(state.range(0)), 2, 1);
  const auto filt = weak_alpha_filtration(cloud);
  for (auto _ : state) {
    auto pairing = reduce(filt);
    benchmark::DoNotOptimize(pairing);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(filt.size()));
}
BENCHMARK(BM_Reduction)->Range(64, 2048);

void BM_ReductionWithClearing(benchmark::State& state) {
  const auto cloud = generate_gaussian_cloud(static_cast<int>(state.range(0)), 2, 1);
  const auto filt = weak_alpha_filtration(cloud);
  for (auto _ : state) {
    auto pairing = reduce(filt, /*clearing=*/true);
    benchmark::DoNotOptimize(pairing);
  }
}
BENCHMARK(BM_ReductionWithClearing)->Range(64, 2048);

void BM_BottleneckDistance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a_cloud = generate_gaussian_cloud(n, 2, 1);
  const auto b_cloud = generate_gaussian_cloud(n, 2, 2);
  const auto fa = weak_alpha_filtration(a_cloud);
  const auto fb = weak_alpha_filtration(b_cloud);
  const auto da = diagrams(fa, reduce(fa), 1);
  const auto db = diagrams(fb, reduce(fb), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bottleneck_distance(da[0], db[0]));
    benchmark::DoNotOptimize(bottleneck_distance(da[1], db[1]));
  }
}
BENCHMARK(BM_BottleneckDistance)->Range(32, 256);

}  // namespace

BENCHMARK_MAIN();

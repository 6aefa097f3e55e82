#include <benchmark/benchmark.h>

#include "topoflux/datasets.hpp"
#include "topoflux/rng.hpp"
#include "topoflux/topo_loss.hpp"

namespace {

using namespace topoflux;

TopoLossSpec cycle_spec() {
  TopoLossSpec spec;
  LossTerm t;
  t.hom_dim = 1;
  t.rank_lo = t.rank_hi = 1;
  t.sign = -1;
  spec.terms.push_back(t);
  return spec;
}

void BM_CycleLossGradient(benchmark::State& state) {
  const auto cloud = generate_gaussian_cloud(static_cast<int>(state.range(0)), 2, 1);
  const auto spec = cycle_spec();
  std::uint64_t it = 0;
  for (auto _ : state) {
    auto lg = eval_spec(cloud, spec, derive_seed(0, it++));
    benchmark::DoNotOptimize(lg);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CycleLossGradient)->Range(64, 1024);

void BM_SampledCycleLoss(benchmark::State& state) {
  const auto cloud = generate_gaussian_cloud(200, 2, 1);
  TopoLossSpec spec = cycle_spec();
  spec.terms[0].sampling = SamplingParams{0.2, static_cast<int>(state.range(0))};
  std::uint64_t it = 0;
  for (auto _ : state) {
    auto lg = eval_spec(cloud, spec, derive_seed(0, it++));
    benchmark::DoNotOptimize(lg);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampledCycleLoss)->RangeMultiplier(2)->Range(1, 16);

}  // namespace

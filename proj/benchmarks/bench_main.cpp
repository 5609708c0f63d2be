#include <benchmark/benchmark.h>

#include "tdlc/localstructure.hpp"
#include "tdlc/modular.hpp"
#include "tdlc/perm_group.hpp"
#include "tdlc/qlattice.hpp"

namespace {

void BM_StabilizerChainOrder(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto g = tdlc::PermGroup::symmetric(n);
  for (auto _ : state) {
    tdlc::StabilizerChain chain(n, g.generators());
    benchmark::DoNotOptimize(chain.order());
  }
}
BENCHMARK(BM_StabilizerChainOrder)->Arg(8)->Arg(16)->Arg(32);

void BM_BallStabilizerOrbits(benchmark::State& state) {
  int radius = static_cast<int>(state.range(0));
  auto m = tdlc::GroupModel::full_aut(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(m.realize(radius)->orbit_sizes.size());
    // realizations are cached per model; rebuild a fresh model each round
    m = tdlc::GroupModel::full_aut(4);
  }
}
BENCHMARK(BM_BallStabilizerOrbits)->Arg(3)->Arg(4)->Arg(5);

void BM_CompositionFactors(benchmark::State& state) {
  auto g = tdlc::PermGroup::symmetric(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.composition_factors());
  }
}
BENCHMARK(BM_CompositionFactors)->Arg(4)->Arg(5)->Arg(6);

void BM_MinGeneratingCost(benchmark::State& state) {
  auto H = tdlc::QPlusLattice::generated_by(
      {tdlc::PositiveRational::from_integer(2),
       tdlc::PositiveRational::from_integer(3),
       tdlc::PositiveRational::from_integer(5)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(tdlc::md_lower_bound_modular(H).value);
  }
}
BENCHMARK(BM_MinGeneratingCost);

void BM_LocalSimpleContent(benchmark::State& state) {
  for (auto _ : state) {
    auto m = tdlc::GroupModel::full_aut(static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(tdlc::local_simple_content(m, 2).stable_factors.size());
  }
}
BENCHMARK(BM_LocalSimpleContent)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();

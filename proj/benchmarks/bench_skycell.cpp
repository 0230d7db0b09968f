#include <benchmark/benchmark.h>

#include "skycell/analytic.hpp"
#include "skycell/exclusion.hpp"
#include "skycell/model.hpp"
#include "skycell/monte_carlo.hpp"

namespace {

using namespace skycell;

const Scenario& drone() {
  static const Scenario sc(reference_drone_config());
  return sc;
}

const Scenario& ground() {
  static const Scenario sc(reference_ground_config());
  return sc;
}

void BM_CoverageDrone(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(coverage_probability(drone()).probability);
}
BENCHMARK(BM_CoverageDrone)->Unit(benchmark::kMillisecond);

void BM_CoverageGround(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(coverage_probability(ground()).probability);
}
BENCHMARK(BM_CoverageGround)->Unit(benchmark::kMillisecond);

void BM_DroneApproximation(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(drone_coverage_approx(drone()).probability);
}
BENCHMARK(BM_DroneApproximation)->Unit(benchmark::kMillisecond);

void BM_LaplaceDerivatives(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto ctx = make_serving(300.0, LinkType::nlos, drone());
  const double s = laplace_argument(ctx, drone());
  for (auto _ : state) benchmark::DoNotOptimize(laplace_interference(ctx, s, drone(), k).value);
}
BENCHMARK(BM_LaplaceDerivatives)->Arg(0)->Arg(2)->Arg(5)->Unit(benchmark::kMicrosecond);

void BM_StrongerSetsClosedForm(benchmark::State& state) {
  const auto ctx = make_serving(650.0, LinkType::nlos, drone());
  for (auto _ : state) benchmark::DoNotOptimize(stronger_sets(ctx, drone()));
}
BENCHMARK(BM_StrongerSetsClosedForm);

void BM_StrongerSetsGeneral(benchmark::State& state) {
  const auto ctx = make_serving(650.0, LinkType::nlos, drone());
  for (auto _ : state) benchmark::DoNotOptimize(stronger_sets_general(ctx, drone()));
}
BENCHMARK(BM_StrongerSetsGeneral);

void BM_MonteCarloDrone(benchmark::State& state) {
  McOptions opts;
  opts.threads = 1;
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_coverage(drone(), {}, n, seed++, opts).mean);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloDrone)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_MonteCarloGround(benchmark::State& state) {
  McOptions opts;
  opts.threads = 1;
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_coverage(ground(), {}, n, seed++, opts).mean);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloGround)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

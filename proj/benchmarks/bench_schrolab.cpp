#include <benchmark/benchmark.h>

#include "schrolab/norms/norms.hpp"
#include "schrolab/spectral/analytic.hpp"
#include "schrolab/spectral/transform.hpp"
#include "schrolab/wiener/estimators.hpp"
#include "schrolab/wiener/randomizer.hpp"

using namespace schrolab;

namespace {

spectral::GridFunction gaussian(int dim, std::size_t n) {
  return spectral::materialize(spectral::Gaussian{}, spectral::SpectralGrid(dim, 20.0, n));
}

void BM_ForwardTransform1D(benchmark::State& state) {
  const auto f = gaussian(1, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectral::forward_transform(f));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ForwardTransform1D)->RangeMultiplier(4)->Range(256, 1 << 18);

void BM_ForwardTransform2D(benchmark::State& state) {
  const auto f = gaussian(2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectral::forward_transform(f));
}
BENCHMARK(BM_ForwardTransform2D)->Arg(64)->Arg(256);

void BM_Propagate(benchmark::State& state) {
  const auto f = spectral::to_frequency(gaussian(1, static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(spectral::propagate(f, 0.37));
}
BENCHMARK(BM_Propagate)->Arg(1024)->Arg(1 << 16);

void BM_MaximalFunction(benchmark::State& state) {
  const auto f = gaussian(1, 4096);
  const auto times = norms::TimeGrid::geometric(0.1, 4, static_cast<int>(state.range(0)), true);
  for (auto _ : state) benchmark::DoNotOptimize(norms::maximal_function(f, times));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(times.size()));
}
BENCHMARK(BM_MaximalFunction)->Arg(8)->Arg(32);

void BM_Randomize(benchmark::State& state) {
  const auto f = spectral::to_frequency(gaussian(1, static_cast<std::size_t>(state.range(0))));
  const wiener::RandomizationPlan plan{wiener::Law::gaussian, 1, wiener::default_active_set(f),
                                      wiener::ProfileKind::raised_cosine};
  std::uint64_t draw = 0;
  for (auto _ : state) benchmark::DoNotOptimize(wiener::randomize(f, plan, draw++));
}
BENCHMARK(BM_Randomize)->Arg(1024)->Arg(8192);

void BM_KhintchineMoment(benchmark::State& state) {
  wiener::CoefficientSeries c;
  for (int k = 0; k < state.range(0); ++k) c.push_back({{k, 0, 0}, Complex(1.0 / (1 + k), 0.5)});
  for (auto _ : state) benchmark::DoNotOptimize(wiener::khintchine_moment(c, wiener::Law::gaussian, 4.0, 10000, 7));
}
BENCHMARK(BM_KhintchineMoment)->Arg(10)->Arg(100);

}  // namespace

// The distro's benchmark_main archive is LTO bytecode from another compiler.
BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "hullfilter/generate.hpp"
#include "hullfilter/hull.hpp"

using namespace hullfilter;

namespace {

void BM_quickhull(benchmark::State& state, Distribution dist, double rho) {
  const PointCloud cloud = generate({dist, std::size_t(state.range(0)), rho, 3});
  for (auto _ : state) {
    HullMesh mesh = quickhull3d(cloud);
    benchmark::DoNotOptimize(mesh.vertices.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * state.range(0));
}

void BM_filtered_hull(benchmark::State& state, Distribution dist, double rho) {
  const PointCloud cloud = generate({dist, std::size_t(state.range(0)), rho, 3});
  for (auto _ : state) {
    FilteredHullResult res = filtered_hull(cloud);
    benchmark::DoNotOptimize(res.hull.vertices.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_quickhull, uniform, Distribution::uniform, 0.0)
    ->Arg(1 << 16)
    ->Arg(1 << 18)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_quickhull, ball, Distribution::sphere, 1.0)
    ->Arg(1 << 16)
    ->Arg(1 << 18)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_filtered_hull, uniform, Distribution::uniform, 0.0)
    ->Arg(1 << 16)
    ->Arg(1 << 18)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_filtered_hull, shell, Distribution::sphere, 0.25)
    ->Arg(1 << 18)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

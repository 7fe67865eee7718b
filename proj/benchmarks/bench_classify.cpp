#include <benchmark/benchmark.h>

#include "hullfilter/generate.hpp"
#include "hullfilter/polyhedron.hpp"
#include "hullfilter/raycast.hpp"

using namespace hullfilter;

namespace {

const PointCloud& bench_cloud() {
  static const PointCloud cloud =
      generate({Distribution::uniform, std::size_t(1) << 18, 0.0, 1});
  return cloud;
}

FilterPolyhedron cloud_polyhedron() {
  const PointCloud& cloud = bench_cloud();
  const AxisExtremes ext = minmax_reduce(cloud);
  return build_polyhedron(ext, nearest_to_corners(cloud, bounding_box(ext)));
}

void BM_classify_backend(benchmark::State& state, IntersectBackend backend) {
  const PointCloud& cloud = bench_cloud();
  const FilterPolyhedron poly = cloud_polyhedron();
  const ClassifyOptions opt{backend, 8192, unsigned(state.range(0))};
  for (auto _ : state) {
    CandidateMask mask = classify_shadow(cloud, poly, opt);
    benchmark::DoNotOptimize(mask.flags.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(cloud.size()));
}

void BM_classify_synthetic_faces(benchmark::State& state, IntersectBackend backend) {
  const PointCloud& cloud = bench_cloud();
  const FilterPolyhedron poly = synth_polyhedron(int(state.range(0)), 7);
  const ClassifyOptions opt{backend, 8192, 0};
  for (auto _ : state) {
    CandidateMask mask = classify_shadow(cloud, poly, opt);
    benchmark::DoNotOptimize(mask.flags.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(cloud.size()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_classify_backend, linear, IntersectBackend::linear)
    ->Arg(1)
    ->Arg(0)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_classify_backend, bvh, IntersectBackend::bvh)
    ->Arg(1)
    ->Arg(0)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_classify_synthetic_faces, linear, IntersectBackend::linear)
    ->Arg(24)
    ->Arg(192)
    ->Arg(1536)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_classify_synthetic_faces, bvh, IntersectBackend::bvh)
    ->Arg(24)
    ->Arg(192)
    ->Arg(1536)
    ->Unit(benchmark::kMillisecond);

#include <benchmark/benchmark.h>

#include <random>

#include "hullfilter/compact.hpp"

using namespace hullfilter;

namespace {

CandidateMask make_mask(std::size_t n) {
  std::mt19937_64 rng(9);
  std::bernoulli_distribution bit(0.5);
  CandidateMask mask;
  mask.flags.resize(n);
  for (auto& f : mask.flags) f = bit(rng) ? 1 : 0;
  return mask;
}

void BM_hierarchical_scan(benchmark::State& state) {
  const CandidateMask mask = make_mask(std::size_t(state.range(0)));
  for (auto _ : state) {
    auto prefix = hierarchical_scan(mask);
    benchmark::DoNotOptimize(prefix.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * state.range(0));
}

void BM_compact_points(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  const CandidateMask mask = make_mask(n);
  PointCloud cloud;
  cloud.points.resize(n);
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  for (auto& p : cloud.points) p = {u(rng), u(rng), u(rng)};
  for (auto _ : state) {
    PointCloud out = compact_points(cloud, mask);
    benchmark::DoNotOptimize(out.points.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * state.range(0));
}

}  // namespace

BENCHMARK(BM_hierarchical_scan)->Arg(1 << 16)->Arg(1 << 20)->Arg(1 << 22);
BENCHMARK(BM_compact_points)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hullfilter/generate.hpp"
#include "hullfilter/hull.hpp"

namespace hullfilter {

// One measured configuration; timings are medians over the repetitions.
struct BenchRecord {
  std::string distribution;
  std::size_t n = 0;
  double rho = 0.0;
  std::uint64_t seed = 0;
  std::string backend;  // "linear", "bvh", or "unfiltered"
  unsigned threads = 0;
  std::uint64_t phase_extremes_ns = 0;
  std::uint64_t phase_poly_ns = 0;
  std::uint64_t phase_classify_ns = 0;
  std::uint64_t phase_compact_ns = 0;
  std::uint64_t phase_hull_ns = 0;
  std::uint64_t total_ns = 0;
  std::uint64_t candidates = 0;
  double discard_fraction = 0.0;
  std::uint64_t hull_vertices = 0;
  std::uint64_t hull_facets = 0;
  std::int64_t faces = -1;  // face-scaling sweeps only; -1 = not applicable
};

void write_csv(const std::vector<BenchRecord>& records, const std::string& path);
std::vector<BenchRecord> read_csv(const std::string& path);

enum class BenchMode { filtered, unfiltered, both };

struct BenchConfig {
  PipelineConfig pipeline;
  BenchMode mode = BenchMode::both;
  int reps = 5;
  bool warmup = true;
};

// One warmup pass (discarded) plus reps timed passes per seed; hulls run
// with the built-in quickhull unless the pipeline names a finisher.
std::vector<BenchRecord> run_bench(const GenSpec& base,
                                   const std::vector<std::uint64_t>& seeds,
                                   const BenchConfig& cfg);

struct SweepRhoConfig {
  std::size_t n = std::size_t(1) << 20;
  std::vector<double> rhos = {0.0, 0.25, 0.5, 1.0};
  std::uint64_t seed = 1;
  int reps = 3;
  PipelineConfig pipeline;
  std::string csv_path;   // empty = no file
  std::string plot_path;  // empty = no plot
};
std::vector<BenchRecord> sweep_rho(const SweepRhoConfig& cfg);

struct SweepFacesConfig {
  std::size_t n = std::size_t(1) << 20;
  std::vector<int> face_counts = {24, 192, 1536, 12288};
  std::uint64_t seed = 1;
  int reps = 5;
  unsigned threads = 0;
  std::string csv_path;
  std::string plot_path;
};
// Classify-only timing of synthetic polyhedra with both backends.
std::vector<BenchRecord> sweep_faces(const SweepFacesConfig& cfg);

struct SweepScaleConfig {
  std::vector<std::size_t> sizes;  // empty = 2^16 .. 2^22
  std::uint64_t seed = 1;
  int reps = 5;
  PipelineConfig pipeline;
  std::string csv_path;
  std::string plot_path;
};
// Filter phases only (no hull) across cloud sizes.
std::vector<BenchRecord> sweep_scale(const SweepScaleConfig& cfg);

// Least-squares slope of log2(y) against log2(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hullfilter

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hullfilter/geom.hpp"
#include "hullfilter/point_cloud.hpp"
#include "hullfilter/raycast.hpp"

namespace hullfilter {

// Convex hull surface. Facet planes contain every input point on their
// inner side within kHullEps; facets are outward wound. dimension < 3 flags
// a lower-dimensional input: 2 = convex polygon (vertices in ring order,
// no facets), 1 = segment endpoints, 0 = single point.
struct HullMesh {
  std::vector<Point3> vertices;
  std::vector<std::size_t> source_index;  // per vertex, into the input cloud
  std::vector<std::array<std::uint32_t, 3>> facets;
  int dimension = 3;
};

// Absolute facet half-space tolerance at unit scale.
inline constexpr double kHullEps = 1e-6;

// Iterative quickhull: furthest-point expansion with horizon repair.
// Lower-dimensional inputs come back flagged instead of throwing.
HullMesh quickhull3d(const PointCloud& cloud);

// Pipeline variant: skips the solver's own extreme scan by trusting
// per-axis extreme indices (min/max interleaved) the filter already found.
HullMesh quickhull3d(const PointCloud& cloud,
                     const std::array<std::size_t, 6>& extreme_hint);

// O(n^4) oracle for n <= 200: a triple is a facet iff every other point
// lies weakly on one side of its plane.
HullMesh brute_hull(const PointCloud& cloud);

enum class FilterPath {
  filtered,  // star-shaped polyhedron, exact inside test
  shadow,    // star-shape check failed; same rays, still sound (see
             // classify_shadow), but the discard region is only the union
             // of the q-to-face tetrahedra
  skipped,   // degenerate cloud, every point kept
};

struct PipelineConfig {
  IntersectBackend backend = IntersectBackend::bvh;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::size_t chunk_size = 8192;
  std::string finisher_command;  // empty = built-in quickhull
  bool build_index_map = false;  // also emit candidate -> input indices
};

struct PipelineStats {
  std::uint64_t phase_extremes_ns = 0;
  std::uint64_t phase_poly_ns = 0;
  std::uint64_t phase_classify_ns = 0;
  std::uint64_t phase_compact_ns = 0;
  std::uint64_t phase_hull_ns = 0;
  std::uint64_t total_ns = 0;
  std::size_t input_points = 0;
  std::size_t candidates = 0;
  double discard_fraction = 0.0;
  FilterPath path = FilterPath::filtered;
};

struct FilterResult {
  CandidateMask mask;
  PointCloud candidates;
  std::vector<std::size_t> candidate_to_input;
  std::array<std::size_t, 6> extreme_candidates;  // per-axis extremes, compacted
  PipelineStats stats;  // hull fields left zero
};

// Phases 1-5 only: extremes -> polyhedron -> classify -> compact.
FilterResult run_filter(const PointCloud& cloud, const PipelineConfig& cfg = {});

struct FilteredHullResult {
  HullMesh hull;  // source_index refers to the candidate cloud
  std::vector<std::size_t> candidate_to_input;
  PipelineStats stats;
};

// Full pipeline: extremes -> polyhedron -> classify -> compact -> hull.
// Degenerate clouds and non-star-shaped polyhedra fall back as FilterPath
// records; lower-dimensional hull results propagate via HullMesh.dimension.
FilteredHullResult filtered_hull(const PointCloud& cloud, const PipelineConfig& cfg = {});

}  // namespace hullfilter

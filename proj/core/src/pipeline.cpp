#include <algorithm>
#include <chrono>

#include "hullfilter/compact.hpp"
#include "hullfilter/errors.hpp"
#include "hullfilter/extremes.hpp"
#include "hullfilter/finisher.hpp"
#include "hullfilter/hull.hpp"
#include "hullfilter/polyhedron.hpp"

namespace hullfilter {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t ns_since(Clock::time_point t0) {
  return std::uint64_t(
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count());
}

HullMesh finish_external(const PointCloud& candidates, const std::string& command) {
  const std::vector<std::size_t> indices = run_external_finisher(candidates, command);
  HullMesh mesh;
  mesh.dimension = 3;
  mesh.vertices.reserve(indices.size());
  for (std::size_t i : indices) {
    mesh.vertices.push_back(candidates[i]);
    mesh.source_index.push_back(i);
  }
  return mesh;
}

}  // namespace

FilterResult run_filter(const PointCloud& cloud, const PipelineConfig& cfg) {
  FilterResult res;
  PipelineStats& st = res.stats;
  st.input_points = cloud.size();
  const auto t_total = Clock::now();

  const ReduceOptions ropt{cfg.chunk_size, cfg.threads};
  auto t0 = Clock::now();
  const AxisExtremes ext = minmax_reduce(cloud, ropt);  // throws on empty cloud
  const Aabb box = bounding_box(ext);
  const CornerPoints corners = nearest_to_corners(cloud, box, ropt);
  st.phase_extremes_ns = ns_since(t0);

  t0 = Clock::now();
  FilterPolyhedron poly;
  bool have_poly = true;
  try {
    poly = build_polyhedron(ext, corners);
  } catch (const DegenerateCloudError&) {
    have_poly = false;
  }
  st.phase_poly_ns = ns_since(t0);

  t0 = Clock::now();
  const ClassifyOptions copt{cfg.backend, cfg.chunk_size, cfg.threads};
  if (have_poly && poly.star_shaped) {
    st.path = FilterPath::filtered;
    res.mask = classify(cloud, poly, copt);
  } else if (have_poly) {
    // Random clouds regularly produce polyhedra that are not star-shaped
    // about any point, so a validated-only pipeline would barely filter.
    // The unvalidated ray test still discards only points strictly inside
    // the hull of the 14 vertices.
    st.path = FilterPath::shadow;
    res.mask = classify_shadow(cloud, poly, copt);
  } else {
    st.path = FilterPath::skipped;
    res.mask.flags.assign(cloud.size(), 1);
  }
  st.phase_classify_ns = ns_since(t0);

  t0 = Clock::now();
  const ScanOptions sopt{kScanTileSize, kScanGroupTiles, cfg.threads};
  if (cfg.build_index_map) {
    CompactResult compacted = compact_points_with_indices(cloud, res.mask, sopt);
    res.candidates = std::move(compacted.points);
    res.candidate_to_input = std::move(compacted.source);
  } else {
    res.candidates = compact_points(cloud, res.mask, sopt);
  }
  // Where the axis extremes landed; the hull phase seeds its initial
  // simplex from them.
  const std::array<std::size_t, 6> extreme_src{
      ext.min_index[0], ext.max_index[0], ext.min_index[1],
      ext.max_index[1], ext.min_index[2], ext.max_index[2]};
  const std::vector<std::size_t> positions =
      compact_positions(res.mask, extreme_src, sopt);
  std::copy(positions.begin(), positions.end(), res.extreme_candidates.begin());
  st.phase_compact_ns = ns_since(t0);
  st.candidates = res.candidates.size();
  st.discard_fraction = cloud.empty() ? 0.0
                                      : double(cloud.size() - res.candidates.size()) /
                                            double(cloud.size());

  st.total_ns = ns_since(t_total);
  return res;
}

FilteredHullResult filtered_hull(const PointCloud& cloud, const PipelineConfig& cfg) {
  const auto t_total = Clock::now();
  FilterResult filt = run_filter(cloud, cfg);

  FilteredHullResult res;
  res.candidate_to_input = std::move(filt.candidate_to_input);
  res.stats = filt.stats;

  const bool have_hint =
      std::none_of(filt.extreme_candidates.begin(), filt.extreme_candidates.end(),
                   [](std::size_t i) { return i == static_cast<std::size_t>(-1); });

  const auto t0 = Clock::now();
  if (!cfg.finisher_command.empty())
    res.hull = finish_external(filt.candidates, cfg.finisher_command);
  else if (have_hint)
    res.hull = quickhull3d(filt.candidates, filt.extreme_candidates);
  else
    res.hull = quickhull3d(filt.candidates);
  res.stats.phase_hull_ns = ns_since(t0);
  res.stats.total_ns = ns_since(t_total);
  return res;
}

}  // namespace hullfilter

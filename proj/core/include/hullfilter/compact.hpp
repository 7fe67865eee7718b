#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hullfilter/point_cloud.hpp"
#include "hullfilter/raycast.hpp"

namespace hullfilter {

// Canonical hierarchy constants: 256-element tiles, 32 tiles per group.
inline constexpr std::size_t kScanTileSize = 256;
inline constexpr std::size_t kScanGroupTiles = 32;

struct ScanOptions {
  std::size_t tile_size = kScanTileSize;
  std::size_t group_tiles = kScanGroupTiles;
  unsigned threads = 0;  // 0 = hardware concurrency
};

// Intermediate sums of the three-level scan, exposed for inspection.
struct ScanTree {
  std::vector<std::uint64_t> tile_sums;     // one per tile
  std::vector<std::uint64_t> group_sums;    // one per group of tiles
  std::vector<std::uint64_t> group_prefix;  // inclusive scan of group_sums
};

// Inclusive prefix sum of the 0/1 flags: independent per-tile scans, a scan
// of tile totals within each group, a sequential scan across group totals,
// then a downsweep adding both offsets. Exact 64-bit arithmetic; the result
// equals a sequential running sum for any thread count.
std::vector<std::uint64_t> hierarchical_scan(const CandidateMask& flags,
                                             const ScanOptions& opt = {},
                                             ScanTree* tree_out = nullptr);

// Stable selection of the flagged points; destination index is the
// inclusive prefix sum minus one.
PointCloud compact_points(const PointCloud& cloud, const CandidateMask& flags,
                          const ScanOptions& opt = {});

// Same selection applied to the point indices, for mapping candidates back
// to the original cloud.
std::vector<std::size_t> compact_indices(const CandidateMask& flags,
                                         const ScanOptions& opt = {});

struct CompactResult {
  PointCloud points;
  std::vector<std::size_t> source;  // original index of each kept point
};

// Destinations of a few specific elements after compaction, without
// materializing the full index map. Unflagged elements map to SIZE_MAX.
std::vector<std::size_t> compact_positions(const CandidateMask& flags,
                                           std::span<const std::size_t> originals,
                                           const ScanOptions& opt = {});

// Single-scan variant producing both the points and the index map; the
// pipeline's compaction phase.
CompactResult compact_points_with_indices(const PointCloud& cloud,
                                          const CandidateMask& flags,
                                          const ScanOptions& opt = {});

}  // namespace hullfilter

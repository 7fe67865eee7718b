#pragma once

#include <array>
#include <cstddef>

#include "hullfilter/geom.hpp"
#include "hullfilter/parallel.hpp"
#include "hullfilter/point_cloud.hpp"

namespace hullfilter {

// Per-axis minima and maxima with witness indices into the source cloud.
// Ties are broken toward the smallest index so the result is identical for
// any chunking and any worker count.
struct AxisExtremes {
  std::array<Point3, 3> min_point, max_point;
  std::array<std::size_t, 3> min_index, max_index;
};

// Octant order, shared with the bounding-box corners and the polyhedron
// face table: bit 0 = x, bit 1 = y, bit 2 = z; a set bit means the positive
// side. Index 0 is (-,-,-), index 7 is (+,+,+).
inline constexpr int octant_sign(std::size_t octant, int axis) {
  return (octant >> axis) & 1 ? +1 : -1;
}

struct CornerPoints {
  std::array<Point3, 8> point;
  std::array<std::size_t, 8> index;
};

struct ReduceOptions {
  std::size_t chunk_size = 8192;
  unsigned threads = 0;  // 0 = hardware concurrency
};

AxisExtremes minmax_reduce(const PointCloud& cloud, const ReduceOptions& opt = {});

Aabb bounding_box(const AxisExtremes& ext);

std::array<Point3, 8> aabb_corners(const Aabb& box);

// For each bounding-box corner, the cloud point with the smallest Manhattan
// distance to it (smallest index on ties).
CornerPoints nearest_to_corners(const PointCloud& cloud, const Aabb& box,
                                const ReduceOptions& opt = {});

}  // namespace hullfilter

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "hullfilter/geom.hpp"
#include "hullfilter/hull.hpp"

namespace hullfilter::detail {

// First four hull vertices plus the detected affine rank of the cloud.
struct InitialSimplex {
  std::array<std::size_t, 4> v{0, 0, 0, 0};
  int dimension = 3;
  Vec3d plane_normal{};  // set when dimension == 2
};

double hull_outside_eps(const std::vector<Point3>& pts);

InitialSimplex find_initial_simplex(const std::vector<Point3>& pts, double eps);

// Variant that trusts precomputed per-axis extreme indices (min/max
// interleaved) instead of scanning for them.
InitialSimplex find_initial_simplex(const std::vector<Point3>& pts, double eps,
                                    const std::array<std::size_t, 6>& extreme);

// Point / segment / polygon results for rank-deficient clouds.
HullMesh degenerate_hull(const PointCloud& cloud, const InitialSimplex& s);

}  // namespace hullfilter::detail

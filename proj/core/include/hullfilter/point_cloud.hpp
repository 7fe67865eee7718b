#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hullfilter/geom.hpp"

namespace hullfilter {

// Immutable by convention: every pipeline stage takes a const reference and
// produces fresh data.
struct PointCloud {
  std::vector<Point3> points;
  std::string distribution = "unspecified";
  double rho = 0.0;
  std::uint64_t seed = 0;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  const Point3& operator[](std::size_t i) const { return points[i]; }
};

}  // namespace hullfilter

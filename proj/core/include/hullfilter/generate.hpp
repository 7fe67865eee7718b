#pragma once

#include <cstdint>
#include <string>

#include "hullfilter/point_cloud.hpp"

namespace hullfilter {

enum class Distribution { uniform, sphere };

std::string to_string(Distribution d);
Distribution distribution_from_string(const std::string& s);

// Cloud recipe. uniform: i.i.d. in [0,1]^3. sphere: center (0.5,0.5,0.5),
// radius 0.5, uniform direction, radius uniform in [(1-rho)*R, R] -- rho 0
// puts every point on the surface, rho 1 fills the ball.
struct GenSpec {
  Distribution dist = Distribution::uniform;
  std::size_t n = 0;
  double rho = 0.0;  // sphere only
  std::uint64_t seed = 0;
};

// Deterministic: the same spec always yields a bit-identical cloud.
PointCloud generate(const GenSpec& spec);

}  // namespace hullfilter

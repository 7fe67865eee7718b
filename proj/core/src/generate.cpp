#include "hullfilter/generate.hpp"

#include <stdexcept>

#include "rng.hpp"

namespace hullfilter {

std::string to_string(Distribution d) {
  return d == Distribution::uniform ? "uniform" : "sphere";
}

Distribution distribution_from_string(const std::string& s) {
  if (s == "uniform") return Distribution::uniform;
  if (s == "sphere") return Distribution::sphere;
  throw std::invalid_argument("unknown distribution: " + s);
}

PointCloud generate(const GenSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("point count must be >= 1");
  if (spec.rho < 0.0 || spec.rho > 1.0)
    throw std::invalid_argument("rho must be in [0, 1]");

  PointCloud cloud;
  cloud.distribution = to_string(spec.dist);
  cloud.rho = spec.dist == Distribution::sphere ? spec.rho : 0.0;
  cloud.seed = spec.seed;
  cloud.points.reserve(spec.n);

  detail::SplitMix64 rng(spec.seed);
  if (spec.dist == Distribution::uniform) {
    for (std::size_t i = 0; i < spec.n; ++i) {
      const float x = rng.unit_float();
      const float y = rng.unit_float();
      const float z = rng.unit_float();
      cloud.points.push_back({x, y, z});
    }
  } else {
    constexpr double kRadius = 0.5;
    for (std::size_t i = 0; i < spec.n; ++i) {
      double dx, dy, dz;
      rng.unit_direction(dx, dy, dz);
      const double r = kRadius * (1.0 - spec.rho) + kRadius * spec.rho * rng.unit_double();
      cloud.points.push_back(
          {float(0.5 + r * dx), float(0.5 + r * dy), float(0.5 + r * dz)});
    }
  }
  return cloud;
}

}  // namespace hullfilter

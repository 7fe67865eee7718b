#include <stdexcept>
#include <vector>

#include "hullfilter/hull.hpp"
#include "hull_detail.hpp"

namespace hullfilter {

// Facet test tolerance, expressed on the unnormalized plane value; equal to
// a signed tetrahedron volume of 1e-10 at unit scale.
static constexpr double kBrutePlaneTol = 6e-10;

HullMesh brute_hull(const PointCloud& cloud) {
  const std::size_t n = cloud.size();
  if (n < 4 || n > 200)
    throw std::invalid_argument("brute_hull handles 4..200 points");

  const double eps = detail::hull_outside_eps(cloud.points);
  const detail::InitialSimplex simplex =
      detail::find_initial_simplex(cloud.points, eps);
  if (simplex.dimension < 3) return detail::degenerate_hull(cloud, simplex);

  std::vector<Vec3d> dp;
  dp.reserve(n);
  for (const Point3& p : cloud.points) dp.push_back(to_vec(p));

  HullMesh mesh;
  std::vector<int> remap(n, -1);
  auto vertex_id = [&](std::size_t i) {
    if (remap[i] < 0) {
      remap[i] = int(mesh.vertices.size());
      mesh.vertices.push_back(cloud[i]);
      mesh.source_index.push_back(i);
    }
    return std::uint32_t(remap[i]);
  };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const Vec3d nrm = cross(dp[j] - dp[i], dp[k] - dp[i]);
        if (norm2(nrm) < kDegenerateAreaSq) continue;
        const double off = dot(nrm, dp[i]);

        bool has_pos = false, has_neg = false;
        for (std::size_t p = 0; p < n && !(has_pos && has_neg); ++p) {
          if (p == i || p == j || p == k) continue;
          const double side = dot(nrm, dp[p]) - off;
          if (side > kBrutePlaneTol) has_pos = true;
          else if (side < -kBrutePlaneTol) has_neg = true;
        }
        if (has_pos && has_neg) continue;

        // Wind so the outward normal has every other point weakly behind.
        if (has_pos)
          mesh.facets.push_back({vertex_id(i), vertex_id(k), vertex_id(j)});
        else
          mesh.facets.push_back({vertex_id(i), vertex_id(j), vertex_id(k)});
      }

  mesh.dimension = 3;
  return mesh;
}

}  // namespace hullfilter

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "hullfilter/extremes.hpp"
#include "hullfilter/geom.hpp"
#include "hullfilter/hull.hpp"
#include "hullfilter/point_cloud.hpp"
#include "hullfilter/polyhedron.hpp"

namespace hftest {

using namespace hullfilter;

inline PointCloud make_cloud(std::vector<Point3> pts) {
  PointCloud c;
  c.points = std::move(pts);
  return c;
}

// The symmetric 14-point cloud whose filtering polyhedron is exactly the
// regular octahedron of the unit cube's face centers plus the eight corner
// tetrahedra: total volume 1/2. Face centers come first so they win the
// smallest-index extreme tie-breaks against the corners.
inline PointCloud face_centers_and_corners() {
  std::vector<Point3> pts = {
      {0.0f, 0.5f, 0.5f}, {1.0f, 0.5f, 0.5f}, {0.5f, 0.0f, 0.5f},
      {0.5f, 1.0f, 0.5f}, {0.5f, 0.5f, 0.0f}, {0.5f, 0.5f, 1.0f},
  };
  for (std::size_t j = 0; j < 8; ++j)
    pts.push_back({j & 1 ? 1.0f : 0.0f, j & 2 ? 1.0f : 0.0f, j & 4 ? 1.0f : 0.0f});
  return make_cloud(std::move(pts));
}

// Weak containment in the tetrahedron (a,b,c,d): every vertex-replacement
// orientation matches the tetrahedron's own sign (zeros allowed).
inline bool tet_contains(const Point3& a, const Point3& b, const Point3& c,
                         const Point3& d, const Point3& p) {
  const double v = signed_tet_volume(a, b, c, d);
  if (std::abs(v) < 1e-30) return false;
  const double s = v > 0 ? 1.0 : -1.0;
  const double t0 = signed_tet_volume(p, b, c, d);
  const double t1 = signed_tet_volume(a, p, c, d);
  const double t2 = signed_tet_volume(a, b, p, d);
  const double t3 = signed_tet_volume(a, b, c, p);
  return s * t0 >= 0 && s * t1 >= 0 && s * t2 >= 0 && s * t3 >= 0;
}

// Independent membership oracle for star-shaped polyhedra: a point is
// inside iff one of the tetrahedra (q, face) contains it.
inline bool inside_star_poly(const FilterPolyhedron& poly, const Point3& p) {
  for (const Triangle& f : poly.faces)
    if (tet_contains(poly.q, f.a, f.b, f.c, p)) return true;
  return false;
}

inline double min_face_plane_distance(const FilterPolyhedron& poly, const Point3& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const Triangle& f : poly.faces) {
    Vec3d n = cross(to_vec(f.b) - to_vec(f.a), to_vec(f.c) - to_vec(f.a));
    const double len = norm(n);
    if (len < 1e-30) continue;
    best = std::min(best, std::abs(dot(n, to_vec(p) - to_vec(f.a))) / len);
  }
  return best;
}

using PointKey = std::array<float, 3>;

inline PointKey key(const Point3& p) { return {p.x, p.y, p.z}; }

inline std::set<PointKey> vertex_point_set(const HullMesh& mesh) {
  std::set<PointKey> s;
  for (const Point3& v : mesh.vertices) s.insert(key(v));
  return s;
}

// Facets as unordered triples of source indices.
inline std::set<std::array<std::size_t, 3>> facet_index_set(const HullMesh& mesh) {
  std::set<std::array<std::size_t, 3>> s;
  for (const auto& f : mesh.facets) {
    std::array<std::size_t, 3> t{mesh.source_index[f[0]], mesh.source_index[f[1]],
                                 mesh.source_index[f[2]]};
    std::sort(t.begin(), t.end());
    s.insert(t);
  }
  return s;
}

struct ManifoldReport {
  bool closed = false;
  bool euler_ok = false;
  double max_violation = 0.0;  // worst point-outside-facet-plane distance
};

// Structural hull checks: every directed edge once, every undirected edge
// twice, Euler characteristic 2, all points weakly inside all facet planes.
inline ManifoldReport check_hull_mesh(const HullMesh& mesh, const PointCloud& cloud) {
  ManifoldReport rep;
  std::set<std::pair<std::uint32_t, std::uint32_t>> directed;
  bool duplicate = false;
  for (const auto& f : mesh.facets)
    for (int e = 0; e < 3; ++e) {
      const auto edge = std::make_pair(f[e], f[(e + 1) % 3]);
      if (!directed.insert(edge).second) duplicate = true;
    }
  bool paired = true;
  for (const auto& e : directed)
    if (!directed.count({e.second, e.first})) paired = false;
  rep.closed = !duplicate && paired;

  const std::size_t V = mesh.vertices.size();
  const std::size_t E = directed.size() / 2;
  const std::size_t F = mesh.facets.size();
  rep.euler_ok = (V + F == E + 2);

  for (const auto& f : mesh.facets) {
    const Vec3d a = to_vec(mesh.vertices[f[0]]);
    Vec3d n = cross(to_vec(mesh.vertices[f[1]]) - a, to_vec(mesh.vertices[f[2]]) - a);
    const double len = norm(n);
    if (len < 1e-30) continue;
    n = n * (1.0 / len);
    const double off = dot(n, a);
    for (const Point3& p : cloud.points)
      rep.max_violation = std::max(rep.max_violation, dot(n, to_vec(p)) - off);
  }
  return rep;
}

inline std::mt19937_64 test_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Point3 random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  return {u(rng), u(rng), u(rng)};
}

inline PointCloud random_cloud(std::size_t n, std::uint64_t seed) {
  auto rng = test_rng(seed);
  std::vector<Point3> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(random_point(rng));
  return make_cloud(std::move(pts));
}

}  // namespace hftest

#include "hullfilter/polyhedron.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "hullfilter/errors.hpp"
#include "hullfilter/hull.hpp"
#include "rng.hpp"

namespace hullfilter {

namespace {

Triangle make_face(const std::vector<Point3>& verts,
                   const std::array<std::uint32_t, 3>& idx) {
  return {verts[idx[0]], verts[idx[1]], verts[idx[2]]};
}

// Base face of one octant: the three axis extremes whose signs match.
// Vertex layout: 0..5 = X-,X+,Y-,Y+,Z-,Z+; 6..13 = corner points. An odd
// number of negative octant signs mirrors the octant, so the winding swaps
// to keep the normal pointing away from the interior.
std::array<std::uint32_t, 3> octant_face(std::size_t octant) {
  const std::uint32_t vx = octant_sign(octant, 0) > 0 ? 1 : 0;
  const std::uint32_t vy = 2 + (octant_sign(octant, 1) > 0 ? 1 : 0);
  const std::uint32_t vz = 4 + (octant_sign(octant, 2) > 0 ? 1 : 0);
  const int minus_signs = 3 - std::popcount(static_cast<unsigned>(octant));
  if (minus_signs % 2 == 0) return {vx, vy, vz};
  return {vx, vz, vy};
}

bool extremes_span_3d(const std::array<Point3, 6>& e) {
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      for (int k = j + 1; k < 6; ++k)
        for (int l = k + 1; l < 6; ++l)
          if (std::abs(signed_tet_volume(e[i], e[j], e[k], e[l])) > kFanVolumeEps)
            return true;
  return false;
}

Point3 centroid(const std::vector<Point3>& pts) {
  double x = 0, y = 0, z = 0;
  for (const Point3& p : pts) {
    x += p.x;
    y += p.y;
    z += p.z;
  }
  const double inv = 1.0 / double(pts.size());
  return {float(x * inv), float(y * inv), float(z * inv)};
}

}  // namespace

double FilterPolyhedron::volume() const {
  double v = 0.0;
  for (const Triangle& f : faces) v += signed_tet_volume(q, f.a, f.b, f.c);
  return v;
}

bool validate_star_shape(const FilterPolyhedron& poly) {
  for (const Triangle& f : poly.faces)
    if (signed_tet_volume(f.a, f.b, f.c, poly.q) >= -kFanVolumeEps) return false;
  return true;
}

FilterPolyhedron build_polyhedron(const AxisExtremes& ext, const CornerPoints& corners) {
  FilterPolyhedron poly;
  poly.vertices.reserve(14);
  poly.source_index.reserve(14);
  for (int k = 0; k < 3; ++k) {
    poly.vertices.push_back(ext.min_point[k]);
    poly.source_index.push_back(ext.min_index[k]);
    poly.vertices.push_back(ext.max_point[k]);
    poly.source_index.push_back(ext.max_index[k]);
  }
  for (std::size_t j = 0; j < 8; ++j) {
    poly.vertices.push_back(corners.point[j]);
    poly.source_index.push_back(corners.index[j]);
  }

  std::array<Point3, 6> axis_pts;
  for (int i = 0; i < 6; ++i) axis_pts[i] = poly.vertices[i];
  if (!extremes_span_3d(axis_pts))
    throw DegenerateCloudError("axis extremes span fewer than 3 dimensions");

  poly.faces.reserve(24);
  poly.face_indices.reserve(24);
  for (std::size_t octant = 0; octant < 8; ++octant) {
    const std::array<std::uint32_t, 3> base = octant_face(octant);
    const Triangle face = make_face(poly.vertices, base);
    const std::uint32_t apex = static_cast<std::uint32_t>(6 + octant);
    const Point3 corner = poly.vertices[apex];

    // Fan only when the corner point is strictly beyond the base plane;
    // coplanar or interior corners keep the single octahedron face.
    if (signed_tet_volume(face.a, face.b, face.c, corner) > kFanVolumeEps) {
      for (int e = 0; e < 3; ++e) {
        std::array<std::uint32_t, 3> fan{base[e], base[(e + 1) % 3], apex};
        poly.face_indices.push_back(fan);
        poly.faces.push_back(make_face(poly.vertices, fan));
      }
    } else {
      poly.face_indices.push_back(base);
      poly.faces.push_back(face);
    }
  }

  // Reference point: midpoint of the two x-extreme points, falling back to
  // the vertex centroid if that midpoint cannot see the whole boundary.
  const Vec3d xm = (to_vec(ext.min_point[0]) + to_vec(ext.max_point[0])) * 0.5;
  poly.q = {float(xm.x), float(xm.y), float(xm.z)};
  poly.star_shaped = validate_star_shape(poly);
  if (!poly.star_shaped) {
    const Point3 saved = poly.q;
    poly.q = centroid(poly.vertices);
    poly.star_shaped = validate_star_shape(poly);
    if (!poly.star_shaped) poly.q = saved;
  }
  return poly;
}

FilterPolyhedron base_octahedron(const AxisExtremes& ext) {
  FilterPolyhedron poly;
  poly.vertices.reserve(6);
  poly.source_index.reserve(6);
  for (int k = 0; k < 3; ++k) {
    poly.vertices.push_back(ext.min_point[k]);
    poly.source_index.push_back(ext.min_index[k]);
    poly.vertices.push_back(ext.max_point[k]);
    poly.source_index.push_back(ext.max_index[k]);
  }
  poly.faces.reserve(8);
  poly.face_indices.reserve(8);
  for (std::size_t octant = 0; octant < 8; ++octant) {
    const std::array<std::uint32_t, 3> base = octant_face(octant);
    poly.face_indices.push_back(base);
    poly.faces.push_back(make_face(poly.vertices, base));
  }
  poly.q = centroid(poly.vertices);
  poly.star_shaped = validate_star_shape(poly);
  return poly;
}

FilterPolyhedron synth_polyhedron(int face_count, std::uint64_t rng_seed) {
  if (face_count < 4) face_count = 4;
  // Points in convex position on a sphere triangulate to 2k - 4 faces.
  const std::size_t k = static_cast<std::size_t>((face_count + 5) / 2);

  detail::SplitMix64 rng(rng_seed);
  PointCloud samples;
  samples.points.reserve(k);
  samples.distribution = "synthetic";
  while (samples.points.size() < k) {
    double dx, dy, dz;
    rng.unit_direction(dx, dy, dz);
    samples.points.push_back(
        {float(0.5 + 0.5 * dx), float(0.5 + 0.5 * dy), float(0.5 + 0.5 * dz)});
  }

  const HullMesh hull = quickhull3d(samples);
  FilterPolyhedron poly;
  poly.vertices = hull.vertices;
  poly.source_index.assign(poly.vertices.size(), kNoSource);
  poly.face_indices = hull.facets;
  poly.faces.reserve(hull.facets.size());
  for (const auto& f : hull.facets) poly.faces.push_back(make_face(poly.vertices, f));
  poly.q = centroid(poly.vertices);
  poly.star_shaped = validate_star_shape(poly);
  return poly;
}

void dump_obj(const FilterPolyhedron& poly, std::ostream& out) {
  char line[128];
  for (const Point3& v : poly.vertices) {
    std::snprintf(line, sizeof line, "v %.9g %.9g %.9g\n", v.x, v.y, v.z);
    out << line;
  }
  for (const auto& f : poly.face_indices) {
    std::snprintf(line, sizeof line, "f %u %u %u\n", f[0] + 1, f[1] + 1, f[2] + 1);
    out << line;
  }
}

}  // namespace hullfilter

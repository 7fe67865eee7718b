#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hullfilter/extremes.hpp"
#include "hullfilter/geom.hpp"

namespace hullfilter {

inline constexpr std::size_t kNoSource = static_cast<std::size_t>(-1);

// Closed triangle surface used to reject interior points. Built from a
// cloud it has 14 vertices (6 axis extremes followed by the 8 corner
// points) and between 8 and 24 faces; synthetic variants for the
// face-scaling benchmark carry arbitrary counts.
struct FilterPolyhedron {
  std::vector<Point3> vertices;
  std::vector<std::size_t> source_index;  // per vertex; kNoSource if synthetic
  std::vector<std::array<std::uint32_t, 3>> face_indices;
  std::vector<Triangle> faces;  // same order as face_indices, outward wound
  Point3 q{};                   // interior reference point
  bool star_shaped = false;

  // Sum of signed tetrahedra from q; equals the enclosed volume when the
  // surface is star-shaped about q.
  double volume() const;
};

// Signed-volume tolerance for the fan-vs-keep test and for the star-shape
// margin. Coplanar corner points keep the base octahedron face.
inline constexpr double kFanVolumeEps = 1e-10;

// Builds the filtering polyhedron: one base face per octant joining the
// matching axis extremes, fanned to the octant's corner point whenever that
// point lies strictly outside the base face plane. Throws
// DegenerateCloudError when the six extremes span fewer than 3 dimensions.
FilterPolyhedron build_polyhedron(const AxisExtremes& ext, const CornerPoints& corners);

// True iff q lies strictly on the interior side of every face plane
// (signed-volume margin > kFanVolumeEps). Required by the outward-ray
// classification: a hit then implies the origin is inside.
bool validate_star_shape(const FilterPolyhedron& poly);

// Octahedron-only variant (no corner fanning) used as the classification
// fallback when the 24-face polyhedron fails the star-shape check.
FilterPolyhedron base_octahedron(const AxisExtremes& ext);

// Benchmark-only: a convex polyhedron with approximately face_count
// triangles, vertices sampled on the sphere inscribed in the unit cube,
// q at the vertex centroid.
FilterPolyhedron synth_polyhedron(int face_count, std::uint64_t rng_seed);

// OBJ-style dump (v/f lines) for inspection.
void dump_obj(const FilterPolyhedron& poly, std::ostream& out);

}  // namespace hullfilter

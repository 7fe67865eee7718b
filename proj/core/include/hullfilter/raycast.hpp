#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hullfilter/geom.hpp"
#include "hullfilter/parallel.hpp"
#include "hullfilter/point_cloud.hpp"
#include "hullfilter/polyhedron.hpp"

namespace hullfilter {

// Per-point candidate flags: 1 = outward ray missed every face (keep),
// 0 = hit (the point is inside the polyhedron and cannot be a hull vertex).
struct CandidateMask {
  std::vector<std::uint8_t> flags;

  std::size_t size() const { return flags.size(); }
  std::uint64_t candidate_count() const;
};

enum class IntersectBackend { linear, bvh };

// Binary BVH over the polyhedron faces: median split on the longest
// centroid axis, at most two triangles per leaf. Boxes are padded by a few
// ulps so traversal never prunes a triangle the linear scan would hit.
struct TriangleBvh {
  struct Node {
    float bmin[3], bmax[3];
    std::uint32_t left = 0;   // internal: left child id; leaf: first triangle
    std::uint32_t right = 0;  // internal: right child id
    std::uint16_t count = 0;  // 0 = internal node
    std::uint16_t depth = 0;
  };

  std::vector<Node> nodes;
  std::vector<std::uint32_t> tri_order;  // permutation of the input triangles
  int max_depth = 0;
};

TriangleBvh build_bvh(std::span<const Triangle> tris);
inline TriangleBvh build_bvh(const FilterPolyhedron& poly) {
  return build_bvh(std::span<const Triangle>(poly.faces));
}

// Any-hit queries used by tests and by classify; both run the same
// per-triangle kernel, so their hit/miss answers agree exactly.
bool any_hit_linear(std::span<const Triangle> tris, const Ray& r);
bool any_hit_bvh(const TriangleBvh& bvh, std::span<const Triangle> tris, const Ray& r);

// Ray start offset: a point lying exactly on a face must not hit it.
inline constexpr double kRayStartEps = 1e-7;

struct ClassifyOptions {
  IntersectBackend backend = IntersectBackend::bvh;
  std::size_t chunk_size = 8192;
  unsigned threads = 0;  // 0 = hardware concurrency
};

// Casts a ray from every point away from q (direction p - q, unbounded) and
// flags the point 0 on any hit, 1 otherwise. The polyhedron's own source
// vertices are always flagged 1. Throws NotStarShapedError unless
// poly.star_shaped.
CandidateMask classify(const PointCloud& cloud, const FilterPolyhedron& poly,
                       const ClassifyOptions& opt = {});

// Same ray test without the star-shape gate. A hit at parameter t > 0 makes
// the origin a strict convex combination of q and the struck face point;
// both lie in the hull of the polyhedron's vertices, so a hit point can
// never be a hull vertex and discarding stays sound for any closed face
// set. The discarded region is the union of the tetrahedra (q, face),
// which equals the enclosed solid exactly when the surface is star-shaped
// about q.
CandidateMask classify_shadow(const PointCloud& cloud, const FilterPolyhedron& poly,
                              const ClassifyOptions& opt = {});

// Fallback classifier: discards only points strictly inside every face
// plane. Sound for any closed outward-wound surface, used with the base
// octahedron when the fanned polyhedron fails the star-shape check.
CandidateMask classify_halfspace(const PointCloud& cloud, const FilterPolyhedron& poly,
                                 const ClassifyOptions& opt = {});

}  // namespace hullfilter

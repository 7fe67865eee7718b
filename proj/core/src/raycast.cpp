#include "hullfilter/raycast.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hullfilter/errors.hpp"

namespace hullfilter {

std::uint64_t CandidateMask::candidate_count() const {
  std::uint64_t n = 0;
  for (std::uint8_t f : flags) n += f;
  return n;
}

namespace {

// Precomputed Moller-Trumbore triangle: origin vertex plus the two edges.
// FP32 keeps a 12k-face set inside L2; the project builds with
// -ffp-contract=off, so every call site evaluates this identically.
struct TriPre {
  float v0x, v0y, v0z;
  float e1x, e1y, e1z;
  float e2x, e2y, e2z;
  float e1_len2;
};

TriPre precompute(const Triangle& t) {
  TriPre p{t.a.x,         t.a.y,         t.a.z,
           t.b.x - t.a.x, t.b.y - t.a.y, t.b.z - t.a.z,
           t.c.x - t.a.x, t.c.y - t.a.y, t.c.z - t.a.z,
           0.0f};
  p.e1_len2 = p.e1x * p.e1x + p.e1y * p.e1y + p.e1z * p.e1z;
  return p;
}

// Rays closer than ~1e-5 rad to the triangle plane are rejected: their
// FP32 hit parameters are unreliable, and for the star-shaped inside test a
// grazing exit only happens for origins already on the face plane, which
// are kept as candidates anyway. Keeping the cutoff relative makes the
// decision independent of which backend enumerated the triangle.
constexpr float kParallelTol2 = 1e-10f;

std::vector<TriPre> precompute(std::span<const Triangle> tris) {
  std::vector<TriPre> out;
  out.reserve(tris.size());
  for (const Triangle& t : tris) out.push_back(precompute(t));
  return out;
}

// Any-hit Moller-Trumbore with inclusive barycentric bounds: edge and
// vertex grazes count as hits; near-zero determinants (parallel rays and
// degenerate triangles) never do. Division-free: the scaled barycentrics
// are compared against the determinant after folding its sign in (an exact
// operation, so both ray backends still agree bit for bit).
inline bool mt_hit(const TriPre& T, float ox, float oy, float oz, float dx, float dy,
                   float dz, float tmin) {
  const float px = dy * T.e2z - dz * T.e2y;
  const float py = dz * T.e2x - dx * T.e2z;
  const float pz = dx * T.e2y - dy * T.e2x;
  const float det = T.e1x * px + T.e1y * py + T.e1z * pz;
  const float pvec2 = px * px + py * py + pz * pz;
  if (det * det <= kParallelTol2 * T.e1_len2 * pvec2) return false;
  const float sign = det > 0.0f ? 1.0f : -1.0f;
  const float sdet = det * sign;
  const float tx = ox - T.v0x, ty = oy - T.v0y, tz = oz - T.v0z;
  const float u = (tx * px + ty * py + tz * pz) * sign;
  if (u < 0.0f || u > sdet) return false;
  const float qx = ty * T.e1z - tz * T.e1y;
  const float qy = tz * T.e1x - tx * T.e1z;
  const float qz = tx * T.e1y - ty * T.e1x;
  const float v = (dx * qx + dy * qy + dz * qz) * sign;
  if (v < 0.0f || u + v > sdet) return false;
  const float t = (T.e2x * qx + T.e2y * qy + T.e2z * qz) * sign;
  return t >= tmin * sdet;
}

inline bool hit_range(const TriPre* tris, std::size_t count, float ox, float oy,
                      float oz, float dx, float dy, float dz, float tmin) {
  for (std::size_t i = 0; i < count; ++i)
    if (mt_hit(tris[i], ox, oy, oz, dx, dy, dz, tmin)) return true;
  return false;
}

// Structure-of-arrays triangle set for the linear backend.
struct TriSoa {
  std::vector<float> v0x, v0y, v0z, e1x, e1y, e1z, e2x, e2y, e2z, e1l2;

  explicit TriSoa(std::span<const TriPre> tris) {
    const std::size_t n = tris.size();
    for (auto* v : {&v0x, &v0y, &v0z, &e1x, &e1y, &e1z, &e2x, &e2y, &e2z, &e1l2})
      v->resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      v0x[i] = tris[i].v0x;
      v0y[i] = tris[i].v0y;
      v0z[i] = tris[i].v0z;
      e1x[i] = tris[i].e1x;
      e1y[i] = tris[i].e1y;
      e1z[i] = tris[i].e1z;
      e2x[i] = tris[i].e2x;
      e2y[i] = tris[i].e2y;
      e2z[i] = tris[i].e2z;
      e1l2[i] = tris[i].e1_len2;
    }
  }

  std::size_t size() const { return v0x.size(); }
};


// Conservative slab test: float boxes were padded at build time and the
// interval arithmetic runs in double with per-ray reciprocals, so a
// reachable leaf is never pruned.
struct SlabRay {
  double o[3], d[3], inv[3];
  double tmin;

  SlabRay(float ox, float oy, float oz, float dx, float dy, float dz, double t0)
      : o{ox, oy, oz}, d{dx, dy, dz}, tmin(t0) {
    for (int k = 0; k < 3; ++k) inv[k] = d[k] == 0.0 ? 0.0 : 1.0 / d[k];
  }
};

inline bool slab_hit(const TriangleBvh::Node& n, const SlabRay& r) {
  double lo = r.tmin, hi = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) {
    if (r.d[k] == 0.0) {
      if (r.o[k] < n.bmin[k] || r.o[k] > n.bmax[k]) return false;
      continue;
    }
    double t0 = (n.bmin[k] - r.o[k]) * r.inv[k];
    double t1 = (n.bmax[k] - r.o[k]) * r.inv[k];
    if (t0 > t1) std::swap(t0, t1);
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
    if (lo > hi) return false;
  }
  return true;
}

float pad_down(float v) { return std::nextafter(std::nextafter(v, -1e30f), -1e30f); }
float pad_up(float v) { return std::nextafter(std::nextafter(v, 1e30f), 1e30f); }

struct BvhBuilder {
  std::span<const Triangle> tris;
  std::vector<std::array<float, 3>> centroid;
  TriangleBvh out;

  explicit BvhBuilder(std::span<const Triangle> t) : tris(t) {
    centroid.reserve(t.size());
    for (const Triangle& tri : t)
      centroid.push_back({(tri.a.x + tri.b.x + tri.c.x) / 3.0f,
                          (tri.a.y + tri.b.y + tri.c.y) / 3.0f,
                          (tri.a.z + tri.b.z + tri.c.z) / 3.0f});
    out.tri_order.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
      out.tri_order[i] = static_cast<std::uint32_t>(i);
    out.nodes.reserve(2 * t.size());
    if (!t.empty()) build(0, t.size(), 0);
  }

  void node_bounds(TriangleBvh::Node& node, std::size_t first, std::size_t count) {
    float mn[3] = {1e30f, 1e30f, 1e30f}, mx[3] = {-1e30f, -1e30f, -1e30f};
    for (std::size_t i = first; i < first + count; ++i) {
      const Triangle& t = tris[out.tri_order[i]];
      for (const Point3& p : {t.a, t.b, t.c}) {
        const float v[3] = {p.x, p.y, p.z};
        for (int k = 0; k < 3; ++k) {
          mn[k] = std::min(mn[k], v[k]);
          mx[k] = std::max(mx[k], v[k]);
        }
      }
    }
    for (int k = 0; k < 3; ++k) {
      node.bmin[k] = pad_down(mn[k]);
      node.bmax[k] = pad_up(mx[k]);
    }
  }

  std::uint32_t build(std::size_t first, std::size_t count, int depth) {
    const std::uint32_t id = static_cast<std::uint32_t>(out.nodes.size());
    out.nodes.emplace_back();
    node_bounds(out.nodes[id], first, count);
    out.nodes[id].depth = static_cast<std::uint16_t>(depth);
    out.max_depth = std::max(out.max_depth, depth);

    if (count <= 2) {
      out.nodes[id].left = static_cast<std::uint32_t>(first);
      out.nodes[id].count = static_cast<std::uint16_t>(count);
      return id;
    }

    // Longest axis of the centroid extent; median split keeps the tree
    // balanced regardless of face clustering.
    float cmin[3] = {1e30f, 1e30f, 1e30f}, cmax[3] = {-1e30f, -1e30f, -1e30f};
    for (std::size_t i = first; i < first + count; ++i)
      for (int k = 0; k < 3; ++k) {
        cmin[k] = std::min(cmin[k], centroid[out.tri_order[i]][k]);
        cmax[k] = std::max(cmax[k], centroid[out.tri_order[i]][k]);
      }
    int axis = 0;
    float best = cmax[0] - cmin[0];
    for (int k = 1; k < 3; ++k)
      if (cmax[k] - cmin[k] > best) {
        best = cmax[k] - cmin[k];
        axis = k;
      }

    const std::size_t mid = first + count / 2;
    std::nth_element(out.tri_order.begin() + first, out.tri_order.begin() + mid,
                     out.tri_order.begin() + first + count,
                     [&](std::uint32_t a, std::uint32_t b) {
                       if (centroid[a][axis] != centroid[b][axis])
                         return centroid[a][axis] < centroid[b][axis];
                       return a < b;
                     });

    const std::uint32_t left = build(first, mid - first, depth + 1);
    const std::uint32_t right = build(mid, first + count - mid, depth + 1);
    out.nodes[id].left = left;
    out.nodes[id].right = right;
    out.nodes[id].count = 0;
    return id;
  }
};

bool bvh_any_hit(const TriangleBvh& bvh, const TriPre* tris, float ox, float oy,
                 float oz, float dx, float dy, float dz, float tmin) {
  if (bvh.nodes.empty()) return false;
  const SlabRay ray(ox, oy, oz, dx, dy, dz, double(tmin));
  std::uint32_t stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const TriangleBvh::Node& node = bvh.nodes[stack[--top]];
    if (!slab_hit(node, ray)) continue;
    if (node.count > 0) {
      if (hit_range(tris + node.left, node.count, ox, oy, oz, dx, dy, dz, tmin))
        return true;
    } else {
      stack[top++] = node.left;
      stack[top++] = node.right;
    }
  }
  return false;
}

}  // namespace

TriangleBvh build_bvh(std::span<const Triangle> tris) {
  BvhBuilder builder(tris);
  return std::move(builder.out);
}

bool any_hit_linear(std::span<const Triangle> tris, const Ray& r) {
  const std::vector<TriPre> pre = precompute(tris);
  return hit_range(pre.data(), pre.size(), r.origin.x, r.origin.y, r.origin.z,
                   float(r.direction.x), float(r.direction.y), float(r.direction.z),
                   float(r.t_min));
}

bool any_hit_bvh(const TriangleBvh& bvh, std::span<const Triangle> tris, const Ray& r) {
  std::vector<TriPre> pre;
  pre.reserve(tris.size());
  for (std::uint32_t i : bvh.tri_order) pre.push_back(precompute(tris[i]));
  return bvh_any_hit(bvh, pre.data(), r.origin.x, r.origin.y, r.origin.z,
                     float(r.direction.x), float(r.direction.y), float(r.direction.z),
                     float(r.t_min));
}

namespace {

// Linear backend, vectorized across points: each triangle is broadcast
// against a 64-point block, and large triangle sets stream in L1-sized
// tiles with a liveness check between tiles. The lane arithmetic is the
// mt_hit expression set, so the verdicts match the scalar kernel exactly.
void classify_chunk_linear(const PointCloud& cloud, const TriSoa& tris, float qx,
                           float qy, float qz, std::uint8_t* flags,
                           std::size_t begin, std::size_t end) {
  constexpr std::size_t kB = 64;
  constexpr std::size_t kTriTile = 256;
  const float tmin = float(kRayStartEps);
  const std::size_t tri_count = tris.size();

  float ox[kB], oy[kB], oz[kB], dx[kB], dy[kB], dz[kB];
  int done[kB];  // 1 = hit found or zero direction

  for (std::size_t b = begin; b < end; b += kB) {
    const std::size_t m = std::min(kB, end - b);
    for (std::size_t i = 0; i < m; ++i) {
      const Point3& p = cloud[b + i];
      ox[i] = p.x;
      oy[i] = p.y;
      oz[i] = p.z;
      dx[i] = p.x - qx;
      dy[i] = p.y - qy;
      dz[i] = p.z - qz;
    }
    int hit[kB] = {};
    std::size_t alive = 0;
    for (std::size_t i = 0; i < m; ++i) {
      done[i] = (dx[i] == 0.0f && dy[i] == 0.0f && dz[i] == 0.0f) ? 1 : 0;
      alive += done[i] ? 0 : 1;
    }

    for (std::size_t t0 = 0; t0 < tri_count && alive > 0; t0 += kTriTile) {
      const std::size_t t1 = std::min(t0 + kTriTile, tri_count);
      for (std::size_t t = t0; t < t1; ++t) {
        const float v0x = tris.v0x[t], v0y = tris.v0y[t], v0z = tris.v0z[t];
        const float e1x = tris.e1x[t], e1y = tris.e1y[t], e1z = tris.e1z[t];
        const float e2x = tris.e2x[t], e2y = tris.e2y[t], e2z = tris.e2z[t];
        const float e1l2 = tris.e1l2[t];
        for (std::size_t i = 0; i < m; ++i) {
          const float px = dy[i] * e2z - dz[i] * e2y;
          const float py = dz[i] * e2x - dx[i] * e2z;
          const float pz = dx[i] * e2y - dy[i] * e2x;
          const float det = e1x * px + e1y * py + e1z * pz;
          const float pvec2 = px * px + py * py + pz * pz;
          const float sign = det > 0.0f ? 1.0f : -1.0f;
          const float sdet = det * sign;
          const float tx = ox[i] - v0x, ty = oy[i] - v0y, tz = oz[i] - v0z;
          const float u = (tx * px + ty * py + tz * pz) * sign;
          const float qcx = ty * e1z - tz * e1y;
          const float qcy = tz * e1x - tx * e1z;
          const float qcz = tx * e1y - ty * e1x;
          const float v = (dx[i] * qcx + dy[i] * qcy + dz[i] * qcz) * sign;
          const float tt = (e2x * qcx + e2y * qcy + e2z * qcz) * sign;
          const int ok = (det * det > kParallelTol2 * e1l2 * pvec2) & (u >= 0.0f) &
                         (u <= sdet) & (v >= 0.0f) & (u + v <= sdet) &
                         (tt >= tmin * sdet);
          hit[i] |= ok;
        }
      }
      alive = 0;
      for (std::size_t i = 0; i < m; ++i) {
        done[i] |= hit[i];
        alive += done[i] ? 0 : 1;
      }
    }
    for (std::size_t i = 0; i < m; ++i) flags[b + i] = done[i] ? 0 : 1;
  }
}

void classify_chunk_bvh(const PointCloud& cloud, const TriangleBvh& bvh,
                        const TriPre* tris, float qx, float qy, float qz,
                        std::uint8_t* flags, std::size_t begin, std::size_t end) {
  const float tmin = float(kRayStartEps);
  for (std::size_t i = begin; i < end; ++i) {
    const Point3& p = cloud[i];
    const float dx = p.x - qx, dy = p.y - qy, dz = p.z - qz;
    if (dx == 0.0f && dy == 0.0f && dz == 0.0f) {
      flags[i] = 0;
      continue;
    }
    flags[i] = bvh_any_hit(bvh, tris, p.x, p.y, p.z, dx, dy, dz, tmin) ? 0 : 1;
  }
}

void force_source_vertices(const FilterPolyhedron& poly, CandidateMask& mask) {
  for (std::size_t src : poly.source_index)
    if (src != kNoSource && src < mask.flags.size()) mask.flags[src] = 1;
}

}  // namespace

CandidateMask classify(const PointCloud& cloud, const FilterPolyhedron& poly,
                       const ClassifyOptions& opt) {
  if (!poly.star_shaped) throw NotStarShapedError{};
  return classify_shadow(cloud, poly, opt);
}

CandidateMask classify_shadow(const PointCloud& cloud, const FilterPolyhedron& poly,
                              const ClassifyOptions& opt) {
  const std::size_t n = cloud.size();
  const unsigned threads = opt.threads ? opt.threads : default_threads();

  CandidateMask mask;
  mask.flags.assign(n, 0);
  const float qx = poly.q.x, qy = poly.q.y, qz = poly.q.z;

  if (opt.backend == IntersectBackend::linear) {
    const std::vector<TriPre> tris = precompute(std::span<const Triangle>(poly.faces));
    const TriSoa soa{std::span<const TriPre>(tris)};
    parallel_chunks(n, opt.chunk_size, threads,
                    [&](std::size_t, std::size_t begin, std::size_t end) {
                      classify_chunk_linear(cloud, soa, qx, qy, qz,
                                            mask.flags.data(), begin, end);
                    });
  } else {
    const TriangleBvh bvh = build_bvh(poly);
    std::vector<TriPre> tris;
    tris.reserve(poly.faces.size());
    for (std::uint32_t i : bvh.tri_order) tris.push_back(precompute(poly.faces[i]));
    parallel_chunks(n, opt.chunk_size, threads,
                    [&](std::size_t, std::size_t begin, std::size_t end) {
                      classify_chunk_bvh(cloud, bvh, tris.data(), qx, qy, qz,
                                         mask.flags.data(), begin, end);
                    });
  }

  force_source_vertices(poly, mask);
  return mask;
}

CandidateMask classify_halfspace(const PointCloud& cloud, const FilterPolyhedron& poly,
                                 const ClassifyOptions& opt) {
  const std::size_t n = cloud.size();
  const unsigned threads = opt.threads ? opt.threads : default_threads();

  struct Plane {
    double nx, ny, nz, off;
  };
  std::vector<Plane> planes;
  planes.reserve(poly.faces.size());
  for (const Triangle& f : poly.faces) {
    const Vec3d nrm = cross(to_vec(f.b) - to_vec(f.a), to_vec(f.c) - to_vec(f.a));
    planes.push_back({nrm.x, nrm.y, nrm.z, dot(nrm, to_vec(f.a))});
  }

  CandidateMask mask;
  mask.flags.assign(n, 0);
  parallel_chunks(n, opt.chunk_size, threads,
                  [&](std::size_t, std::size_t begin, std::size_t end) {
                    for (std::size_t i = begin; i < end; ++i) {
                      const Vec3d p = to_vec(cloud[i]);
                      bool inside = true;
                      for (const Plane& pl : planes) {
                        if (pl.nx * p.x + pl.ny * p.y + pl.nz * p.z >= pl.off) {
                          inside = false;  // on or outside this face plane
                          break;
                        }
                      }
                      mask.flags[i] = inside ? 0 : 1;
                    }
                  });

  force_source_vertices(poly, mask);
  return mask;
}

}  // namespace hullfilter

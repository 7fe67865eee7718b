#include "hullfilter/geom.hpp"

#include <algorithm>
#include <utility>

namespace hullfilter {

double manhattan_distance(const Point3& a, const Point3& b) {
  return std::abs(double(a.x) - double(b.x)) + std::abs(double(a.y) - double(b.y)) +
         std::abs(double(a.z) - double(b.z));
}

namespace {

// Largest-magnitude component of the ray direction; used to pick the shear
// axis of the watertight transform.
int max_dim(const Vec3d& v) {
  double ax = std::abs(v.x), ay = std::abs(v.y), az = std::abs(v.z);
  if (ax > ay && ax > az) return 0;
  return ay > az ? 1 : 2;
}

double comp(const Vec3d& v, int k) { return k == 0 ? v.x : (k == 1 ? v.y : v.z); }

}  // namespace

std::optional<double> ray_triangle_intersect(const Ray& r, const Triangle& t) {
  const Vec3d a = to_vec(t.a), b = to_vec(t.b), c = to_vec(t.c);
  if (norm2(cross(b - a, c - a)) < kDegenerateAreaSq) return std::nullopt;

  // Woop-style watertight transform: shear so the ray becomes +z, then test
  // the 2D scaled barycentric coordinates. Zeros (edge/vertex grazes) pass.
  const int kz = max_dim(r.direction);
  int kx = kz + 1 == 3 ? 0 : kz + 1;
  int ky = kx + 1 == 3 ? 0 : kx + 1;
  if (comp(r.direction, kz) < 0.0) std::swap(kx, ky);

  const double dz = comp(r.direction, kz);
  if (dz == 0.0) return std::nullopt;  // zero-length direction
  const double sx = comp(r.direction, kx) / dz;
  const double sy = comp(r.direction, ky) / dz;
  const double sz = 1.0 / dz;

  const Vec3d o = to_vec(r.origin);
  const Vec3d pa = a - o, pb = b - o, pc = c - o;

  const double ax = comp(pa, kx) - sx * comp(pa, kz);
  const double ay = comp(pa, ky) - sy * comp(pa, kz);
  const double bx = comp(pb, kx) - sx * comp(pb, kz);
  const double by = comp(pb, ky) - sy * comp(pb, kz);
  const double cx = comp(pc, kx) - sx * comp(pc, kz);
  const double cy = comp(pc, ky) - sy * comp(pc, kz);

  const double u = cx * by - cy * bx;
  const double v = ax * cy - ay * cx;
  const double w = bx * ay - by * ax;

  if ((u < 0.0 || v < 0.0 || w < 0.0) && (u > 0.0 || v > 0.0 || w > 0.0))
    return std::nullopt;

  const double det = u + v + w;
  if (det == 0.0) return std::nullopt;

  const double az = sz * comp(pa, kz);
  const double bz = sz * comp(pb, kz);
  const double cz = sz * comp(pc, kz);
  const double t_scaled = u * az + v * bz + w * cz;

  const double hit_t = t_scaled / det;
  if (hit_t < r.t_min || hit_t > r.t_max) return std::nullopt;
  return hit_t;
}

double signed_tet_volume(const Point3& a, const Point3& b, const Point3& c,
                         const Point3& d) {
  // Sort the four arguments lexicographically and track the permutation
  // parity: one evaluation order per point multiset makes the sign flip
  // exact under argument transpositions.
  std::array<Point3, 4> p{a, b, c, d};
  auto lex_less = [](const Point3& u, const Point3& v) {
    if (u.x != v.x) return u.x < v.x;
    if (u.y != v.y) return u.y < v.y;
    return u.z < v.z;
  };
  int swaps = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3 - i; ++j)
      if (lex_less(p[j + 1], p[j])) {
        std::swap(p[j], p[j + 1]);
        ++swaps;
      }

  const Vec3d u = to_vec(p[1]) - to_vec(p[0]);
  const Vec3d v = to_vec(p[2]) - to_vec(p[0]);
  const Vec3d w = to_vec(p[3]) - to_vec(p[0]);
  const double det = dot(u, cross(v, w));
  const double vol = det / 6.0;
  return (swaps & 1) ? -vol : vol;
}

}  // namespace hullfilter

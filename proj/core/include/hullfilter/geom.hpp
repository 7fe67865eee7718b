#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

namespace hullfilter {

// Input points are FP32; every predicate below accumulates in FP64.
struct Point3 {
  float x = 0.0f, y = 0.0f, z = 0.0f;

  friend bool operator==(const Point3&, const Point3&) = default;
};

struct Vec3d {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3d operator+(const Vec3d& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3d operator-(const Vec3d& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3d operator*(double s) const { return {x * s, y * s, z * s}; }
};

inline Vec3d to_vec(const Point3& p) { return {p.x, p.y, p.z}; }

inline double dot(const Vec3d& a, const Vec3d& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3d cross(const Vec3d& a, const Vec3d& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm2(const Vec3d& a) { return dot(a, a); }
inline double norm(const Vec3d& a) { return std::sqrt(norm2(a)); }

struct Aabb {
  Point3 min, max;
};

// Vertices are counter-clockwise when viewed from outside the surface the
// triangle belongs to.
struct Triangle {
  Point3 a, b, c;
};

struct Ray {
  Point3 origin;
  Vec3d direction;  // not necessarily unit length
  double t_min = 0.0;
  double t_max = std::numeric_limits<double>::infinity();
};

// Triangles whose squared doubled area falls below this never report hits.
inline constexpr double kDegenerateAreaSq = 1e-12;

double manhattan_distance(const Point3& a, const Point3& b);

// Watertight ray/triangle test; returns the hit parameter t in
// [t_min, t_max], with edge and vertex grazes counting as hits.
std::optional<double> ray_triangle_intersect(const Ray& r, const Triangle& t);

// det[b-a, c-a, d-a] / 6. The arguments are canonicalized internally so the
// result flips sign exactly under any transposition of two arguments.
double signed_tet_volume(const Point3& a, const Point3& b, const Point3& c,
                         const Point3& d);

}  // namespace hullfilter

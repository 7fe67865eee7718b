#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hullfilter/hull.hpp"
#include "hull_detail.hpp"

namespace hullfilter {

namespace detail {

// Outside threshold: points closer than this to a face plane are treated as
// on it and never become conflict candidates. Well below kHullEps so the
// final mesh satisfies the containment contract with room to spare.
double hull_outside_eps(const std::vector<Point3>& pts) {
  float m = 1.0f;
  for (const Point3& p : pts)
    m = std::max({m, std::fabs(p.x), std::fabs(p.y), std::fabs(p.z)});
  return 1e-7 * double(m);
}

InitialSimplex find_initial_simplex(const std::vector<Point3>& pts, double eps) {
  // Axis extremes give a wide, cheap base for the first tetrahedron.
  std::array<std::size_t, 6> extreme{};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const float v[3] = {pts[i].x, pts[i].y, pts[i].z};
    for (int k = 0; k < 3; ++k) {
      const float lo[3] = {pts[extreme[2 * k]].x, pts[extreme[2 * k]].y,
                           pts[extreme[2 * k]].z};
      const float hi[3] = {pts[extreme[2 * k + 1]].x, pts[extreme[2 * k + 1]].y,
                           pts[extreme[2 * k + 1]].z};
      if (v[k] < lo[k]) extreme[2 * k] = i;
      if (v[k] > hi[k]) extreme[2 * k + 1] = i;
    }
  }
  return find_initial_simplex(pts, eps, extreme);
}

InitialSimplex find_initial_simplex(const std::vector<Point3>& pts, double eps,
                                    const std::array<std::size_t, 6>& extreme) {
  InitialSimplex s;
  const std::size_t n = pts.size();

  double best = -1.0;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      const double d = norm2(to_vec(pts[extreme[i]]) - to_vec(pts[extreme[j]]));
      if (d > best) {
        best = d;
        s.v[0] = extreme[i];
        s.v[1] = extreme[j];
      }
    }
  if (best <= eps * eps) {
    s.dimension = 0;
    return s;
  }

  const Vec3d a = to_vec(pts[s.v[0]]);
  const Vec3d ab = to_vec(pts[s.v[1]]) - a;
  const double ab2 = norm2(ab);
  best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = norm2(cross(to_vec(pts[i]) - a, ab));
    if (d > best) {
      best = d;
      s.v[2] = i;
    }
  }
  if (best <= eps * eps * ab2) {
    s.dimension = 1;
    return s;
  }

  Vec3d nrm = cross(to_vec(pts[s.v[1]]) - a, to_vec(pts[s.v[2]]) - a);
  const double nlen = norm(nrm);
  nrm = nrm * (1.0 / nlen);
  const double off = dot(nrm, a);
  best = -1.0;
  double signed_best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = dot(nrm, to_vec(pts[i])) - off;
    if (std::fabs(d) > best) {
      best = std::fabs(d);
      signed_best = d;
      s.v[3] = i;
    }
  }
  if (best <= eps) {
    s.dimension = 2;
    s.plane_normal = nrm;
    return s;
  }

  // Keep the apex below face (v0, v1, v2) so the standard winding table
  // produces outward faces.
  if (signed_best > 0.0) std::swap(s.v[1], s.v[2]);
  s.dimension = 3;
  return s;
}

HullMesh degenerate_hull(const PointCloud& cloud, const InitialSimplex& s) {
  const std::vector<Point3>& pts = cloud.points;
  HullMesh mesh;
  mesh.dimension = s.dimension;

  if (s.dimension == 0) {
    mesh.vertices.push_back(pts[0]);
    mesh.source_index.push_back(0);
    return mesh;
  }

  if (s.dimension == 1) {
    const Vec3d a = to_vec(pts[s.v[0]]);
    const Vec3d dir = to_vec(pts[s.v[1]]) - a;
    std::size_t lo = 0, hi = 0;
    double lo_t = std::numeric_limits<double>::infinity(), hi_t = -lo_t;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double t = dot(to_vec(pts[i]) - a, dir);
      if (t < lo_t) {
        lo_t = t;
        lo = i;
      }
      if (t > hi_t) {
        hi_t = t;
        hi = i;
      }
    }
    mesh.vertices = {pts[lo], pts[hi]};
    mesh.source_index = {lo, hi};
    return mesh;
  }

  // Planar cloud: convex polygon by monotone chain in an in-plane basis.
  const Vec3d n = s.plane_normal;
  Vec3d u = std::fabs(n.x) < 0.9 ? cross(n, {1, 0, 0}) : cross(n, {0, 1, 0});
  u = u * (1.0 / norm(u));
  const Vec3d v = cross(n, u);

  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<double> px(pts.size()), py(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    px[i] = dot(to_vec(pts[i]), u);
    py[i] = dot(to_vec(pts[i]), v);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (px[i] != px[j]) return px[i] < px[j];
    if (py[i] != py[j]) return py[i] < py[j];
    return i < j;
  });
  order.erase(std::unique(order.begin(), order.end(),
                          [&](std::size_t i, std::size_t j) {
                            return px[i] == px[j] && py[i] == py[j];
                          }),
              order.end());

  auto turn = [&](std::size_t o, std::size_t p, std::size_t q) {
    return (px[p] - px[o]) * (py[q] - py[o]) - (py[p] - py[o]) * (px[q] - px[o]);
  };
  std::vector<std::size_t> ring;
  if (order.size() <= 2) {
    ring = order;
  } else {
    for (std::size_t oi = 0; oi < order.size(); ++oi) {  // lower chain
      const std::size_t i = order[oi];
      while (ring.size() >= 2 &&
             turn(ring[ring.size() - 2], ring[ring.size() - 1], i) <= 0.0)
        ring.pop_back();
      ring.push_back(i);
    }
    const std::size_t lower = ring.size();
    for (std::size_t oi = order.size() - 1; oi-- > 0;) {  // upper chain
      const std::size_t i = order[oi];
      while (ring.size() > lower &&
             turn(ring[ring.size() - 2], ring[ring.size() - 1], i) <= 0.0)
        ring.pop_back();
      ring.push_back(i);
    }
    ring.pop_back();  // the first point closed the loop
  }

  for (std::size_t i : ring) {
    mesh.vertices.push_back(pts[i]);
    mesh.source_index.push_back(i);
  }
  return mesh;
}

}  // namespace detail

namespace {

using detail::InitialSimplex;

struct QuickHullSolver {
  const std::vector<Point3>& pts;
  std::vector<Vec3d> dp;  // double copies of the input
  double eps;

  struct Face {
    std::array<int, 3> v;
    std::array<int, 3> nbr;  // across edge (v[i], v[(i+1)%3])
    Vec3d n;                 // unit outward normal
    double off = 0.0;        // plane: dot(n, p) = off
    std::vector<int> conflict;
    int far_idx = -1;
    double far_dist = 0.0;
    bool alive = true;
    std::uint32_t stamp = 0;
  };

  std::vector<Face> faces;
  std::vector<int> free_slots;
  std::vector<int> pending;  // faces that may have conflict points
  std::uint32_t visit_stamp = 0;

  explicit QuickHullSolver(const std::vector<Point3>& p, double e) : pts(p), eps(e) {
    dp.reserve(p.size());
    for (const Point3& q : p) dp.push_back(to_vec(q));
  }

  double dist(const Face& f, int i) const { return dot(f.n, dp[i]) - f.off; }

  void set_plane(Face& f) {
    const Vec3d& a = dp[f.v[0]];
    Vec3d n = cross(dp[f.v[1]] - a, dp[f.v[2]] - a);
    const double len = norm(n);
    if (len > 1e-300) n = n * (1.0 / len);
    f.n = n;
    f.off = dot(n, a);
  }

  int new_face(int a, int b, int c) {
    int id;
    if (!free_slots.empty()) {
      id = free_slots.back();
      free_slots.pop_back();
      faces[id] = Face{};
    } else {
      id = static_cast<int>(faces.size());
      faces.emplace_back();
    }
    Face& f = faces[id];
    f.v = {a, b, c};
    f.nbr = {-1, -1, -1};
    set_plane(f);
    return id;
  }

  void assign(int point, const int* candidates, std::size_t count) {
    int best_face = -1;
    double best = eps;
    for (std::size_t k = 0; k < count; ++k) {
      const double d = dist(faces[candidates[k]], point);
      if (d > best) {
        best = d;
        best_face = candidates[k];
      }
    }
    if (best_face < 0) return;  // interior: gone for good
    Face& f = faces[best_face];
    f.conflict.push_back(point);
    if (best > f.far_dist) {
      f.far_dist = best;
      f.far_idx = point;
    }
  }

  void link(int fa, int a, int b, int fb) {
    Face& f = faces[fa];
    for (int e = 0; e < 3; ++e)
      if (f.v[e] == a && f.v[(e + 1) % 3] == b) {
        f.nbr[e] = fb;
        return;
      }
  }

  void build_simplex(const InitialSimplex& s) {
    const int a = int(s.v[0]), b = int(s.v[1]), c = int(s.v[2]), d = int(s.v[3]);
    const int f0 = new_face(a, b, c);
    const int f1 = new_face(a, d, b);
    const int f2 = new_face(b, d, c);
    const int f3 = new_face(a, c, d);
    const int quad[4] = {f0, f1, f2, f3};
    for (int fi : quad)
      for (int gi : quad) {
        if (fi == gi) continue;
        for (int e = 0; e < 3; ++e) {
          const int u = faces[fi].v[e], w = faces[fi].v[(e + 1) % 3];
          for (int e2 = 0; e2 < 3; ++e2)
            if (faces[gi].v[e2] == w && faces[gi].v[(e2 + 1) % 3] == u)
              faces[fi].nbr[e] = gi;
        }
      }

    const int init[4] = {f0, f1, f2, f3};
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (int(i) == a || int(i) == b || int(i) == c || int(i) == d) continue;
      assign(int(i), init, 4);
    }
    for (int fi : quad)
      if (!faces[fi].conflict.empty()) pending.push_back(fi);
  }

  struct HorizonEdge {
    int from, to, outer;
  };

  // Expands the hull toward the furthest conflict point of face fid.
  void process(int fid) {
    Face& seed = faces[fid];
    const int apex = seed.far_idx;

    // Flood fill across faces visible from the apex.
    ++visit_stamp;
    std::vector<int> visible{fid};
    seed.stamp = visit_stamp;
    std::vector<HorizonEdge> horizon;
    for (std::size_t w = 0; w < visible.size(); ++w) {
      const int vf = visible[w];
      for (int e = 0; e < 3; ++e) {
        const int g = faces[vf].nbr[e];
        if (faces[g].stamp == visit_stamp) continue;
        if (dist(faces[g], apex) > eps) {
          faces[g].stamp = visit_stamp;
          visible.push_back(g);
        } else {
          horizon.push_back({faces[vf].v[e], faces[vf].v[(e + 1) % 3], g});
        }
      }
    }

    // Chain the horizon edges into a loop. A non-simple horizon means the
    // apex is numerically unusable; bury it and move on.
    std::vector<int> loop_order;
    {
      std::vector<std::pair<int, int>> by_from;  // (from vertex, edge slot)
      by_from.reserve(horizon.size());
      for (std::size_t i = 0; i < horizon.size(); ++i)
        by_from.emplace_back(horizon[i].from, int(i));
      std::sort(by_from.begin(), by_from.end());
      bool simple = true;
      for (std::size_t i = 1; i < by_from.size(); ++i)
        if (by_from[i].first == by_from[i - 1].first) simple = false;
      auto edge_from = [&](int v) -> int {
        auto it = std::lower_bound(by_from.begin(), by_from.end(),
                                   std::make_pair(v, -1));
        return it != by_from.end() && it->first == v ? it->second : -1;
      };
      if (simple && !horizon.empty()) {
        int cur = 0;
        for (std::size_t i = 0; i < horizon.size(); ++i) {
          loop_order.push_back(cur);
          cur = edge_from(horizon[cur].to);
          if (cur < 0) break;
        }
        if (loop_order.size() != horizon.size() ||
            horizon[loop_order.back()].to != horizon[loop_order.front()].from)
          loop_order.clear();
      }
    }
    if (loop_order.empty()) {
      auto& list = seed.conflict;
      list.erase(std::remove(list.begin(), list.end(), apex), list.end());
      refresh_far(seed);
      if (!list.empty()) pending.push_back(fid);
      return;
    }

    // Cap: one new face per horizon edge, stitched to the kept neighbor and
    // to the adjacent new faces around the apex.
    std::vector<int> fresh;
    fresh.reserve(loop_order.size());
    for (int ei : loop_order) {
      const HorizonEdge& h = horizon[ei];
      const int nf = new_face(h.from, h.to, apex);
      faces[nf].nbr[0] = h.outer;
      link(h.outer, h.to, h.from, nf);
      fresh.push_back(nf);
    }
    const int m = int(fresh.size());
    for (int i = 0; i < m; ++i) {
      faces[fresh[i]].nbr[1] = fresh[(i + 1) % m];  // edge (to, apex)
      faces[fresh[i]].nbr[2] = fresh[(i + m - 1) % m];  // edge (apex, from)
    }

    // Re-home the orphaned conflict points; anything no longer outside is
    // interior to the grown hull.
    std::vector<int> orphans;
    for (int vf : visible) {
      orphans.insert(orphans.end(), faces[vf].conflict.begin(),
                     faces[vf].conflict.end());
      faces[vf].alive = false;
      faces[vf].conflict = std::vector<int>();
      free_slots.push_back(vf);
    }
    for (int p : orphans)
      if (p != apex) assign(p, fresh.data(), fresh.size());

    for (int nf : fresh)
      if (!faces[nf].conflict.empty()) pending.push_back(nf);
  }

  void refresh_far(Face& f) {
    f.far_idx = -1;
    f.far_dist = eps;
    for (int p : f.conflict) {
      const double d = dist(f, p);
      if (d > f.far_dist) {
        f.far_dist = d;
        f.far_idx = p;
      }
    }
  }

  void run(const InitialSimplex& s) {
    build_simplex(s);
    while (!pending.empty()) {
      const int fid = pending.back();
      pending.pop_back();
      if (!faces[fid].alive || faces[fid].conflict.empty()) continue;
      process(fid);
    }
  }

  HullMesh extract(const PointCloud& cloud) const {
    HullMesh mesh;
    std::vector<int> remap(pts.size(), -1);
    for (const Face& f : faces) {
      if (!f.alive) continue;
      std::array<std::uint32_t, 3> facet;
      for (int e = 0; e < 3; ++e) {
        const int v = f.v[e];
        if (remap[v] < 0) {
          remap[v] = int(mesh.vertices.size());
          mesh.vertices.push_back(cloud[v]);
          mesh.source_index.push_back(std::size_t(v));
        }
        facet[e] = std::uint32_t(remap[v]);
      }
      mesh.facets.push_back(facet);
    }
    mesh.dimension = 3;
    return mesh;
  }
};

}  // namespace

namespace {

HullMesh solve(const PointCloud& cloud, const InitialSimplex& simplex, double eps) {
  if (simplex.dimension < 3) return detail::degenerate_hull(cloud, simplex);
  QuickHullSolver solver(cloud.points, eps);
  solver.run(simplex);
  return solver.extract(cloud);
}

}  // namespace

HullMesh quickhull3d(const PointCloud& cloud) {
  if (cloud.empty()) {
    HullMesh mesh;
    mesh.dimension = 0;
    return mesh;
  }
  const double eps = detail::hull_outside_eps(cloud.points);
  return solve(cloud, detail::find_initial_simplex(cloud.points, eps), eps);
}

HullMesh quickhull3d(const PointCloud& cloud,
                     const std::array<std::size_t, 6>& extreme_hint) {
  if (cloud.empty()) {
    HullMesh mesh;
    mesh.dimension = 0;
    return mesh;
  }
  const double eps = detail::hull_outside_eps(cloud.points);
  return solve(cloud, detail::find_initial_simplex(cloud.points, eps, extreme_hint),
               eps);
}

}  // namespace hullfilter

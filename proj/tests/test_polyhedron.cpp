#include <doctest.h>

#include <random>
#include <sstream>

#include "hullfilter/errors.hpp"
#include "hullfilter/generate.hpp"
#include "hullfilter/polyhedron.hpp"
#include "support.hpp"

using namespace hullfilter;

namespace {

FilterPolyhedron build_from_cloud(const PointCloud& cloud) {
  const AxisExtremes ext = minmax_reduce(cloud);
  return build_polyhedron(ext, nearest_to_corners(cloud, bounding_box(ext)));
}

}  // namespace

TEST_CASE("face centers plus cube corners build the full 24-face polyhedron") {
  const PointCloud cloud = hftest::face_centers_and_corners();
  const FilterPolyhedron poly = build_from_cloud(cloud);

  CHECK(poly.vertices.size() == 14);
  CHECK(poly.faces.size() == 24);
  CHECK(poly.star_shaped);
  CHECK(poly.q == Point3{0.5f, 0.5f, 0.5f});
  // Octahedron volume 1/6 plus eight corner tetrahedra of 1/24 each.
  CHECK(poly.volume() == doctest::Approx(0.5).epsilon(1e-12));

  // Monte Carlo cross-check of the same volume via the membership oracle.
  auto rng = hftest::test_rng(3);
  int inside = 0;
  const int samples = 20000;
  for (int i = 0; i < samples; ++i)
    if (hftest::inside_star_poly(poly, hftest::random_point(rng))) ++inside;
  CHECK(double(inside) / samples == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("coincident corner and extreme keeps the base face") {
  // Only the six octahedron vertices: every corner point coincides with an
  // axis extreme, so no octant fans out.
  const PointCloud cloud = hftest::make_cloud({{0.0f, 0.5f, 0.5f},
                                               {1.0f, 0.5f, 0.5f},
                                               {0.5f, 0.0f, 0.5f},
                                               {0.5f, 1.0f, 0.5f},
                                               {0.5f, 0.5f, 0.0f},
                                               {0.5f, 0.5f, 1.0f}});
  const FilterPolyhedron poly = build_from_cloud(cloud);
  CHECK(poly.faces.size() == 8);
  CHECK(poly.star_shaped);
  CHECK(poly.volume() == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("coplanar cloud is degenerate") {
  PointCloud cloud;
  auto rng = hftest::test_rng(5);
  for (int i = 0; i < 100; ++i) {
    const Point3 p = hftest::random_point(rng);
    cloud.points.push_back({p.x, p.y, 0.25f});
  }
  CHECK_THROWS_AS(build_from_cloud(cloud), DegenerateCloudError);
}

TEST_CASE("star shape validation") {
  FilterPolyhedron poly = build_from_cloud(hftest::face_centers_and_corners());
  CHECK(validate_star_shape(poly));

  SUBCASE("flipping one face breaks it") {
    std::swap(poly.faces[5].b, poly.faces[5].c);
    CHECK(!validate_star_shape(poly));
  }
  SUBCASE("an exterior q breaks it") {
    poly.q = {2.0f, 2.0f, 2.0f};
    CHECK(!validate_star_shape(poly));
  }
}

TEST_CASE("kept-face polyhedron stays star shaped about the x midpoint") {
  // Pull one corner point inward so exactly one octant keeps its base face.
  PointCloud cloud = hftest::face_centers_and_corners();
  cloud.points[6 + 7] = {0.62f, 0.62f, 0.62f};  // the (+,+,+) corner, now interior
  const FilterPolyhedron poly = build_from_cloud(cloud);
  CHECK(poly.faces.size() == 22);  // one fan collapsed back to a single face
  CHECK(poly.star_shaped);
}

TEST_CASE("built polyhedra validate honestly and dominate the octahedron") {
  for (std::uint64_t seed : {11ull, 12ull, 13ull, 14ull}) {
    for (Distribution dist : {Distribution::uniform, Distribution::sphere}) {
      const PointCloud cloud = generate({dist, 4000, 0.5, seed});
      const AxisExtremes ext = minmax_reduce(cloud);
      const CornerPoints corners = nearest_to_corners(cloud, bounding_box(ext));
      const FilterPolyhedron poly = build_polyhedron(ext, corners);

      // The star_shaped flag must agree with the per-face position of q.
      bool q_behind_all = true;
      for (const Triangle& f : poly.faces) {
        const Vec3d n = cross(to_vec(f.b) - to_vec(f.a), to_vec(f.c) - to_vec(f.a));
        if (dot(n, to_vec(poly.q) - to_vec(f.a)) >= 0.0) q_behind_all = false;
      }
      CHECK(poly.star_shaped == q_behind_all);
      CHECK(poly.star_shaped == validate_star_shape(poly));

      const FilterPolyhedron octa = base_octahedron(ext);
      CHECK(poly.volume() >= octa.volume() - 1e-12);

      // No vertex sits strictly inside the base octahedron: each one is on
      // or outside at least one base face plane.
      for (const Point3& v : poly.vertices) {
        double most_outside = -1e300;
        for (const Triangle& f : octa.faces)
          most_outside =
              std::max(most_outside, signed_tet_volume(f.a, f.b, f.c, v));
        CHECK(most_outside >= -1e-9);
      }

      // Face vertices reference the 14-vertex set.
      for (const auto& fi : poly.face_indices)
        for (std::uint32_t vi : fi) CHECK(vi < poly.vertices.size());
    }
  }
}

TEST_CASE("synthetic polyhedron face counts") {
  const FilterPolyhedron tetra = synth_polyhedron(4, 7);
  CHECK(tetra.faces.size() == 4);
  CHECK(tetra.star_shaped);

  const FilterPolyhedron p24 = synth_polyhedron(24, 7);
  CHECK(p24.faces.size() >= 22);
  CHECK(p24.faces.size() <= 26);
  CHECK(p24.star_shaped);

  for (int fc : {192, 1536}) {
    const FilterPolyhedron p = synth_polyhedron(fc, 3);
    CHECK(double(p.faces.size()) >= 0.9 * fc);
    CHECK(double(p.faces.size()) <= 1.1 * fc);
    CHECK(p.star_shaped);  // convex, so star-shaped about its centroid
  }
}

TEST_CASE("obj dump lists vertices and faces") {
  const FilterPolyhedron poly = build_from_cloud(hftest::face_centers_and_corners());
  std::ostringstream out;
  dump_obj(poly, out);
  const std::string text = out.str();
  std::size_t v_lines = 0, f_lines = 0;
  for (std::size_t pos = 0; pos < text.size(); ++pos)
    if (pos == 0 || text[pos - 1] == '\n') {
      if (text[pos] == 'v') ++v_lines;
      if (text[pos] == 'f') ++f_lines;
    }
  CHECK(v_lines == 14);
  CHECK(f_lines == 24);
}

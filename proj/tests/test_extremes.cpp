#include <doctest.h>

#include <random>

#include "hullfilter/errors.hpp"
#include "hullfilter/extremes.hpp"
#include "hullfilter/generate.hpp"
#include "hullfilter/hull.hpp"
#include "support.hpp"

using namespace hullfilter;

namespace {

// Sequential oracle with the same smallest-index tie-break.
AxisExtremes sequential_minmax(const PointCloud& cloud) {
  AxisExtremes ext;
  ext.min_index.fill(0);
  ext.max_index.fill(0);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const float v[3] = {cloud[i].x, cloud[i].y, cloud[i].z};
    for (int k = 0; k < 3; ++k) {
      const Point3 lo = cloud[ext.min_index[k]];
      const Point3 hi = cloud[ext.max_index[k]];
      const float lov = k == 0 ? lo.x : (k == 1 ? lo.y : lo.z);
      const float hiv = k == 0 ? hi.x : (k == 1 ? hi.y : hi.z);
      if (v[k] < lov) ext.min_index[k] = i;
      if (v[k] > hiv) ext.max_index[k] = i;
    }
  }
  for (int k = 0; k < 3; ++k) {
    ext.min_point[k] = cloud[ext.min_index[k]];
    ext.max_point[k] = cloud[ext.max_index[k]];
  }
  return ext;
}

bool extremes_equal(const AxisExtremes& a, const AxisExtremes& b) {
  for (int k = 0; k < 3; ++k) {
    if (a.min_index[k] != b.min_index[k] || a.max_index[k] != b.max_index[k])
      return false;
    if (!(a.min_point[k] == b.min_point[k]) || !(a.max_point[k] == b.max_point[k]))
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("minmax reduce singleton") {
  const PointCloud cloud = hftest::make_cloud({{0.3f, 0.7f, 0.1f}});
  const AxisExtremes ext = minmax_reduce(cloud);
  for (int k = 0; k < 3; ++k) {
    CHECK(ext.min_point[k] == cloud[0]);
    CHECK(ext.max_point[k] == cloud[0]);
    CHECK(ext.min_index[k] == 0);
    CHECK(ext.max_index[k] == 0);
  }
}

TEST_CASE("minmax reduce unit cube corners") {
  std::vector<Point3> pts;
  for (std::size_t j = 0; j < 8; ++j)
    pts.push_back({j & 1 ? 1.0f : 0.0f, j & 2 ? 1.0f : 0.0f, j & 4 ? 1.0f : 0.0f});
  const AxisExtremes ext = minmax_reduce(hftest::make_cloud(std::move(pts)));
  const Aabb box = bounding_box(ext);
  CHECK(box.min == Point3{0, 0, 0});
  CHECK(box.max == Point3{1, 1, 1});
}

TEST_CASE("minmax reduce empty cloud throws") {
  CHECK_THROWS_AS(minmax_reduce(PointCloud{}), EmptyCloudError);
}

TEST_CASE("minmax reduce equals sequential scan on a large cloud") {
  const PointCloud cloud = generate({Distribution::uniform, 1000000, 0.0, 42});
  const AxisExtremes oracle = sequential_minmax(cloud);
  CHECK(extremes_equal(minmax_reduce(cloud), oracle));
}

TEST_CASE("reductions are chunking and thread-count independent") {
  // Duplicated points force real index tie-breaks.
  PointCloud cloud = generate({Distribution::uniform, 100000, 0.0, 5});
  for (int i = 0; i < 1000; ++i)
    cloud.points.push_back(cloud.points[std::size_t(i) * 97 % 100000]);
  const AxisExtremes oracle = sequential_minmax(cloud);
  const Aabb box = bounding_box(oracle);

  CornerPoints corner_ref;
  bool have_ref = false;
  for (std::size_t chunk : {std::size_t(1), std::size_t(64), std::size_t(4096)}) {
    for (unsigned threads : {1u, 2u, 4u}) {
      const ReduceOptions opt{chunk, threads};
      CHECK(extremes_equal(minmax_reduce(cloud, opt), oracle));
      const CornerPoints c = nearest_to_corners(cloud, box, opt);
      if (!have_ref) {
        corner_ref = c;
        have_ref = true;
      } else {
        for (int j = 0; j < 8; ++j) CHECK(c.index[j] == corner_ref.index[j]);
      }
    }
  }
}

TEST_CASE("bounding box of a flat cloud is flat") {
  const PointCloud cloud = hftest::make_cloud(
      {{0.1f, 0.9f, 0.5f}, {0.7f, 0.3f, 0.5f}, {0.4f, 0.6f, 0.5f}});
  const Aabb box = bounding_box(minmax_reduce(cloud));
  CHECK(box.min.z == 0.5f);
  CHECK(box.max.z == 0.5f);
}

TEST_CASE("every point lies inside the bounding box") {
  const PointCloud cloud = generate({Distribution::sphere, 20000, 0.3, 9});
  const Aabb box = bounding_box(minmax_reduce(cloud));
  for (const Point3& p : cloud.points) {
    CHECK(p.x >= box.min.x);
    CHECK(p.y >= box.min.y);
    CHECK(p.z >= box.min.z);
    CHECK(p.x <= box.max.x);
    CHECK(p.y <= box.max.y);
    CHECK(p.z <= box.max.z);
  }
}

TEST_CASE("aabb corners follow the octant order") {
  const Aabb box{{0, 0, 0}, {1, 2, 3}};
  const auto corners = aabb_corners(box);
  CHECK(corners[0] == Point3{0, 0, 0});
  CHECK(corners[1] == Point3{1, 0, 0});
  CHECK(corners[2] == Point3{0, 2, 0});
  CHECK(corners[7] == Point3{1, 2, 3});
}

TEST_CASE("corner containing the corner point selects it at distance zero") {
  PointCloud cloud = hftest::random_cloud(500, 17);
  cloud.points.push_back({1, 1, 1});
  cloud.points.push_back({0, 0, 0});
  const Aabb box{{0, 0, 0}, {1, 1, 1}};
  const CornerPoints c = nearest_to_corners(cloud, box);
  CHECK(c.point[0] == Point3{0, 0, 0});
  CHECK(c.point[7] == Point3{1, 1, 1});
}

TEST_CASE("nearest corner maximizes the matching linear functional") {
  const PointCloud cloud = hftest::random_cloud(5000, 23);
  const Aabb box = bounding_box(minmax_reduce(cloud));
  const CornerPoints c = nearest_to_corners(cloud, box);

  // Inside the box, minimizing Manhattan distance to the (+,+,+) corner is
  // the same as maximizing x + y + z.
  std::size_t best = 0;
  double best_sum = -1e300;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const double s = double(cloud[i].x) + cloud[i].y + cloud[i].z;
    if (s > best_sum) {
      best_sum = s;
      best = i;
    }
  }
  CHECK(c.index[7] == best);
}

TEST_CASE("nearest corners equal the brute-force scan") {
  const PointCloud cloud = generate({Distribution::uniform, 100000, 0.0, 31});
  const Aabb box = bounding_box(minmax_reduce(cloud));
  const auto corners = aabb_corners(box);
  const CornerPoints got = nearest_to_corners(cloud, box);
  for (std::size_t j = 0; j < 8; ++j) {
    std::size_t best = 0;
    double best_d = manhattan_distance(cloud[0], corners[j]);
    for (std::size_t i = 1; i < cloud.size(); ++i) {
      const double d = manhattan_distance(cloud[i], corners[j]);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    CHECK(got.index[j] == best);
  }
}

TEST_CASE("extremes and corner points are hull vertices") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    for (Distribution dist : {Distribution::uniform, Distribution::sphere}) {
      const PointCloud cloud = generate({dist, 1000, 0.4, seed});
      const AxisExtremes ext = minmax_reduce(cloud);
      const CornerPoints corners =
          nearest_to_corners(cloud, bounding_box(ext));
      const auto hull_vertices = hftest::vertex_point_set(quickhull3d(cloud));
      for (int k = 0; k < 3; ++k) {
        CHECK(hull_vertices.count(hftest::key(ext.min_point[k])) == 1);
        CHECK(hull_vertices.count(hftest::key(ext.max_point[k])) == 1);
      }
      for (int j = 0; j < 8; ++j)
        CHECK(hull_vertices.count(hftest::key(corners.point[j])) == 1);
    }
  }
}

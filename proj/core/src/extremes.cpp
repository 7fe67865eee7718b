#include "hullfilter/extremes.hpp"

#include <limits>
#include <vector>

#include "hullfilter/errors.hpp"

namespace hullfilter {

namespace {

float axis_value(const Point3& p, int axis) {
  return axis == 0 ? p.x : (axis == 1 ? p.y : p.z);
}

struct MinMaxPartial {
  std::array<float, 3> min_val, max_val;
  std::array<std::size_t, 3> min_idx, max_idx;

  static MinMaxPartial identity() {
    MinMaxPartial p;
    p.min_val.fill(std::numeric_limits<float>::infinity());
    p.max_val.fill(-std::numeric_limits<float>::infinity());
    p.min_idx.fill(0);
    p.max_idx.fill(0);
    return p;
  }

  // Combining in chunk order keeps the smallest-index tie-break global.
  void combine(const MinMaxPartial& o) {
    for (int k = 0; k < 3; ++k) {
      if (o.min_val[k] < min_val[k] ||
          (o.min_val[k] == min_val[k] && o.min_idx[k] < min_idx[k])) {
        min_val[k] = o.min_val[k];
        min_idx[k] = o.min_idx[k];
      }
      if (o.max_val[k] > max_val[k] ||
          (o.max_val[k] == max_val[k] && o.max_idx[k] < max_idx[k])) {
        max_val[k] = o.max_val[k];
        max_idx[k] = o.max_idx[k];
      }
    }
  }
};

struct CornerPartial {
  std::array<double, 8> dist;
  std::array<std::size_t, 8> idx;

  static CornerPartial identity() {
    CornerPartial p;
    p.dist.fill(std::numeric_limits<double>::infinity());
    p.idx.fill(0);
    return p;
  }
};

}  // namespace

AxisExtremes minmax_reduce(const PointCloud& cloud, const ReduceOptions& opt) {
  if (cloud.empty()) throw EmptyCloudError{};
  const std::size_t n = cloud.size();
  const unsigned threads = opt.threads ? opt.threads : default_threads();

  std::vector<MinMaxPartial> partials(chunk_count(n, opt.chunk_size),
                                      MinMaxPartial::identity());
  parallel_chunks(
      n, opt.chunk_size, threads,
      [&](std::size_t c, std::size_t begin, std::size_t end) {
        // Branchless value pass, then a re-scan for the first index
        // attaining each extreme: same witnesses as an element-by-element
        // smallest-index reduction.
        MinMaxPartial local = MinMaxPartial::identity();
        for (std::size_t i = begin; i < end; ++i) {
          const Point3& p = cloud[i];
          const float v[3] = {p.x, p.y, p.z};
          for (int k = 0; k < 3; ++k) {
            local.min_val[k] = std::min(local.min_val[k], v[k]);
            local.max_val[k] = std::max(local.max_val[k], v[k]);
          }
        }
        for (int k = 0; k < 3; ++k) {
          for (std::size_t i = begin; i < end; ++i)
            if (axis_value(cloud[i], k) == local.min_val[k]) {
              local.min_idx[k] = i;
              break;
            }
          for (std::size_t i = begin; i < end; ++i)
            if (axis_value(cloud[i], k) == local.max_val[k]) {
              local.max_idx[k] = i;
              break;
            }
        }
        partials[c] = local;
      });

  MinMaxPartial total = partials[0];
  for (std::size_t c = 1; c < partials.size(); ++c) total.combine(partials[c]);

  AxisExtremes ext;
  for (int k = 0; k < 3; ++k) {
    ext.min_index[k] = total.min_idx[k];
    ext.max_index[k] = total.max_idx[k];
    ext.min_point[k] = cloud[total.min_idx[k]];
    ext.max_point[k] = cloud[total.max_idx[k]];
  }
  return ext;
}

Aabb bounding_box(const AxisExtremes& ext) {
  Aabb box;
  box.min = {ext.min_point[0].x, ext.min_point[1].y, ext.min_point[2].z};
  box.max = {ext.max_point[0].x, ext.max_point[1].y, ext.max_point[2].z};
  return box;
}

std::array<Point3, 8> aabb_corners(const Aabb& box) {
  std::array<Point3, 8> corners;
  for (std::size_t j = 0; j < 8; ++j) {
    corners[j] = {octant_sign(j, 0) > 0 ? box.max.x : box.min.x,
                  octant_sign(j, 1) > 0 ? box.max.y : box.min.y,
                  octant_sign(j, 2) > 0 ? box.max.z : box.min.z};
  }
  return corners;
}

CornerPoints nearest_to_corners(const PointCloud& cloud, const Aabb& box,
                                const ReduceOptions& opt) {
  if (cloud.empty()) throw EmptyCloudError{};
  const std::size_t n = cloud.size();
  const unsigned threads = opt.threads ? opt.threads : default_threads();
  const std::array<Point3, 8> corners = aabb_corners(box);

  std::vector<CornerPartial> partials(chunk_count(n, opt.chunk_size),
                                      CornerPartial::identity());
  const Vec3d lo = to_vec(box.min), hi = to_vec(box.max);
  // Per-axis |p - corner| terms are shared by all eight corners; the sums
  // match manhattan_distance's evaluation order exactly.
  auto corner_dists = [&](const Point3& pt, double (&d)[8]) {
    const double dx[2] = {std::abs(double(pt.x) - lo.x),
                          std::abs(double(pt.x) - hi.x)};
    const double dy[2] = {std::abs(double(pt.y) - lo.y),
                          std::abs(double(pt.y) - hi.y)};
    const double dz[2] = {std::abs(double(pt.z) - lo.z),
                          std::abs(double(pt.z) - hi.z)};
    for (std::size_t j = 0; j < 8; ++j)
      d[j] = dx[j & 1] + dy[(j >> 1) & 1] + dz[(j >> 2) & 1];
  };
  parallel_chunks(n, opt.chunk_size, threads,
                  [&](std::size_t c, std::size_t begin, std::size_t end) {
                    // Branchless distance pass, then a witness re-scan.
                    CornerPartial local = CornerPartial::identity();
                    double d[8];
                    for (std::size_t i = begin; i < end; ++i) {
                      corner_dists(cloud[i], d);
                      for (std::size_t j = 0; j < 8; ++j)
                        local.dist[j] = std::min(local.dist[j], d[j]);
                    }
                    std::uint8_t found = 0;
                    for (std::size_t i = begin; i < end && found != 0xff; ++i) {
                      corner_dists(cloud[i], d);
                      for (std::size_t j = 0; j < 8; ++j)
                        if (!(found & (1u << j)) && d[j] == local.dist[j]) {
                          local.idx[j] = i;
                          found |= std::uint8_t(1u << j);
                        }
                    }
                    partials[c] = local;
                  });

  CornerPartial total = partials[0];
  for (std::size_t c = 1; c < partials.size(); ++c) {
    for (std::size_t j = 0; j < 8; ++j) {
      if (partials[c].dist[j] < total.dist[j] ||
          (partials[c].dist[j] == total.dist[j] && partials[c].idx[j] < total.idx[j])) {
        total.dist[j] = partials[c].dist[j];
        total.idx[j] = partials[c].idx[j];
      }
    }
  }

  CornerPoints result;
  for (std::size_t j = 0; j < 8; ++j) {
    result.index[j] = total.idx[j];
    result.point[j] = cloud[total.idx[j]];
  }
  return result;
}

}  // namespace hullfilter

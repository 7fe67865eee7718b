#pragma once

#include <iosfwd>
#include <string>

#include "hullfilter/hull.hpp"
#include "hullfilter/point_cloud.hpp"

namespace hullfilter {

enum class CloudFormat { binary, text };

// Binary layout: magic "P3F1", u64 little-endian count, then count xyz
// triples of little-endian f32. Text: one "x y z" line per point.
void write_cloud(const PointCloud& cloud, std::ostream& out, CloudFormat fmt);
PointCloud read_cloud(std::istream& in, CloudFormat fmt);

void write_cloud_file(const PointCloud& cloud, const std::string& path, CloudFormat fmt);
PointCloud read_cloud_file(const std::string& path, CloudFormat fmt);

// Sniffs the magic bytes to pick the format.
PointCloud read_cloud_file_auto(const std::string& path);

// OFF: header, "V F 0" counts, vertex lines, then "3 i j k" facet lines.
void write_off(const HullMesh& mesh, std::ostream& out);

}  // namespace hullfilter

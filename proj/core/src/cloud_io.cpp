#include "hullfilter/cloud_io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hullfilter {

static_assert(std::endian::native == std::endian::little,
              "the binary cloud format assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'P', '3', 'F', '1'};

[[noreturn]] void io_fail(const std::string& msg) {
  throw std::runtime_error("cloud io: " + msg);
}

}  // namespace

void write_cloud(const PointCloud& cloud, std::ostream& out, CloudFormat fmt) {
  if (fmt == CloudFormat::binary) {
    out.write(kMagic, 4);
    const std::uint64_t n = cloud.size();
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(cloud.points.data()),
              std::streamsize(n * sizeof(Point3)));
  } else {
    char line[96];
    for (const Point3& p : cloud.points) {
      const int len = std::snprintf(line, sizeof line, "%.9g %.9g %.9g\n",
                                    double(p.x), double(p.y), double(p.z));
      out.write(line, len);
    }
  }
  if (!out) io_fail("write failed");
}

PointCloud read_cloud(std::istream& in, CloudFormat fmt) {
  PointCloud cloud;
  cloud.distribution = "file";
  if (fmt == CloudFormat::binary) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) io_fail("bad magic");
    std::uint64_t n = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    if (!in) io_fail("truncated header");
    cloud.points.resize(n);
    in.read(reinterpret_cast<char*>(cloud.points.data()),
            std::streamsize(n * sizeof(Point3)));
    if (!in) io_fail("truncated point data");
  } else {
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      Point3 p;
      if (std::sscanf(line.c_str(), "%f %f %f", &p.x, &p.y, &p.z) != 3)
        io_fail("unparsable line: " + line);
      cloud.points.push_back(p);
    }
  }
  return cloud;
}

void write_cloud_file(const PointCloud& cloud, const std::string& path,
                      CloudFormat fmt) {
  std::ofstream out(path, std::ios::binary);
  if (!out) io_fail("cannot open " + path + " for writing");
  write_cloud(cloud, out, fmt);
}

PointCloud read_cloud_file(const std::string& path, CloudFormat fmt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_fail("cannot open " + path);
  return read_cloud(in, fmt);
}

PointCloud read_cloud_file_auto(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_fail("cannot open " + path);
  char magic[4] = {0, 0, 0, 0};
  in.read(magic, 4);
  in.seekg(0);
  return read_cloud(in, std::memcmp(magic, kMagic, 4) == 0 ? CloudFormat::binary
                                                           : CloudFormat::text);
}

void write_off(const HullMesh& mesh, std::ostream& out) {
  out << "OFF\n" << mesh.vertices.size() << ' ' << mesh.facets.size() << " 0\n";
  char line[96];
  for (const Point3& v : mesh.vertices) {
    const int len = std::snprintf(line, sizeof line, "%.9g %.9g %.9g\n",
                                  double(v.x), double(v.y), double(v.z));
    out.write(line, len);
  }
  for (const auto& f : mesh.facets)
    out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  if (!out) io_fail("write failed");
}

}  // namespace hullfilter

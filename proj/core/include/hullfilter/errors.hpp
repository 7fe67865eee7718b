#pragma once

#include <stdexcept>
#include <string>

namespace hullfilter {

struct EmptyCloudError : std::runtime_error {
  EmptyCloudError() : std::runtime_error("point cloud is empty") {}
};

struct DegenerateCloudError : std::runtime_error {
  explicit DegenerateCloudError(const std::string& what) : std::runtime_error(what) {}
};

struct NotStarShapedError : std::runtime_error {
  NotStarShapedError()
      : std::runtime_error("filter polyhedron is not star-shaped about q") {}
};

struct LengthMismatchError : std::runtime_error {
  LengthMismatchError(std::size_t cloud, std::size_t mask)
      : std::runtime_error("mask length " + std::to_string(mask) +
                           " does not match cloud size " + std::to_string(cloud)) {}
};

}  // namespace hullfilter

#pragma once

#include <string>
#include <vector>

#include "hullfilter/point_cloud.hpp"

namespace hullfilter {

// Runs an external hull command: the candidate points are streamed to its
// standard input as "x y z" lines and it must answer with one hull vertex
// index per line (0-based, into the streamed order). Throws on process
// failure or out-of-range indices.
std::vector<std::size_t> run_external_finisher(const PointCloud& candidates,
                                               const std::string& command);

}  // namespace hullfilter

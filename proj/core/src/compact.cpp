#include "hullfilter/compact.hpp"

#include <algorithm>

#include "hullfilter/errors.hpp"
#include "hullfilter/parallel.hpp"

namespace hullfilter {

namespace {

struct ScanSums {
  std::size_t tile, tiles_per_group;
  unsigned threads;
  std::vector<std::uint64_t> tile_prefix;  // inclusive, within each group
  ScanTree tree;

  std::uint64_t total() const {
    return tree.group_prefix.empty() ? 0 : tree.group_prefix.back();
  }

  // Flag count preceding tile t: the prefix of earlier groups plus the
  // prefix of earlier tiles within t's group.
  std::uint64_t tile_offset(std::size_t t) const {
    const std::size_t g = t / tiles_per_group;
    std::uint64_t offset = g > 0 ? tree.group_prefix[g - 1] : 0;
    if (t > g * tiles_per_group) offset += tile_prefix[t - 1];
    return offset;
  }
};

// The three reduction levels: per-tile totals, tile totals scanned within
// each group, group totals scanned sequentially. The element-level pass is
// left to the caller, which re-walks each tile once with the offsets known.
ScanSums scan_sums(const CandidateMask& flags, const ScanOptions& opt) {
  const std::size_t n = flags.size();
  ScanSums s;
  s.tile = std::max<std::size_t>(opt.tile_size, 1);
  s.tiles_per_group = std::max<std::size_t>(opt.group_tiles, 1);
  s.threads = opt.threads ? opt.threads : default_threads();

  s.tree.tile_sums.assign(chunk_count(n, s.tile), 0);
  s.tree.group_sums.assign(chunk_count(n, s.tile * s.tiles_per_group), 0);
  s.tile_prefix.assign(s.tree.tile_sums.size(), 0);
  s.tree.group_prefix.assign(s.tree.group_sums.size(), 0);
  if (n == 0) return s;

  parallel_chunks(n, s.tile, s.threads,
                  [&](std::size_t t, std::size_t begin, std::size_t end) {
                    std::uint64_t run = 0;
                    for (std::size_t i = begin; i < end; ++i) run += flags.flags[i];
                    s.tree.tile_sums[t] = run;
                  });

  parallel_chunks(s.tree.tile_sums.size(), s.tiles_per_group, s.threads,
                  [&](std::size_t g, std::size_t begin, std::size_t end) {
                    std::uint64_t run = 0;
                    for (std::size_t t = begin; t < end; ++t) {
                      run += s.tree.tile_sums[t];
                      s.tile_prefix[t] = run;
                    }
                    s.tree.group_sums[g] = run;
                  });

  std::uint64_t run = 0;
  for (std::size_t g = 0; g < s.tree.group_sums.size(); ++g) {
    run += s.tree.group_sums[g];
    s.tree.group_prefix[g] = run;
  }
  return s;
}

}  // namespace

std::vector<std::uint64_t> hierarchical_scan(const CandidateMask& flags,
                                             const ScanOptions& opt,
                                             ScanTree* tree_out) {
  ScanSums s = scan_sums(flags, opt);
  std::vector<std::uint64_t> out(flags.size());
  parallel_chunks(flags.size(), s.tile, s.threads,
                  [&](std::size_t t, std::size_t begin, std::size_t end) {
                    std::uint64_t run = s.tile_offset(t);
                    for (std::size_t i = begin; i < end; ++i) {
                      run += flags.flags[i];
                      out[i] = run;
                    }
                  });
  if (tree_out) *tree_out = std::move(s.tree);
  return out;
}

PointCloud compact_points(const PointCloud& cloud, const CandidateMask& flags,
                          const ScanOptions& opt) {
  if (cloud.size() != flags.size())
    throw LengthMismatchError(cloud.size(), flags.size());

  PointCloud out;
  out.distribution = cloud.distribution;
  out.rho = cloud.rho;
  out.seed = cloud.seed;
  if (cloud.empty()) return out;

  const ScanSums s = scan_sums(flags, opt);
  out.points.resize(s.total());
  parallel_chunks(flags.size(), s.tile, s.threads,
                  [&](std::size_t t, std::size_t begin, std::size_t end) {
                    std::uint64_t run = s.tile_offset(t);
                    for (std::size_t i = begin; i < end; ++i)
                      if (flags.flags[i]) out.points[run++] = cloud[i];
                  });
  return out;
}

std::vector<std::size_t> compact_indices(const CandidateMask& flags,
                                         const ScanOptions& opt) {
  const ScanSums s = scan_sums(flags, opt);
  std::vector<std::size_t> out(s.total());
  parallel_chunks(flags.size(), s.tile, s.threads,
                  [&](std::size_t t, std::size_t begin, std::size_t end) {
                    std::uint64_t run = s.tile_offset(t);
                    for (std::size_t i = begin; i < end; ++i)
                      if (flags.flags[i]) out[run++] = i;
                  });
  return out;
}

std::vector<std::size_t> compact_positions(const CandidateMask& flags,
                                           std::span<const std::size_t> originals,
                                           const ScanOptions& opt) {
  const ScanSums s = scan_sums(flags, opt);
  std::vector<std::size_t> out;
  out.reserve(originals.size());
  for (std::size_t i : originals) {
    if (i >= flags.size() || !flags.flags[i]) {
      out.push_back(static_cast<std::size_t>(-1));
      continue;
    }
    const std::size_t t = i / s.tile;
    std::uint64_t run = s.tile_offset(t);
    for (std::size_t k = t * s.tile; k <= i; ++k) run += flags.flags[k];
    out.push_back(std::size_t(run - 1));
  }
  return out;
}

CompactResult compact_points_with_indices(const PointCloud& cloud,
                                          const CandidateMask& flags,
                                          const ScanOptions& opt) {
  if (cloud.size() != flags.size())
    throw LengthMismatchError(cloud.size(), flags.size());

  CompactResult res;
  res.points.distribution = cloud.distribution;
  res.points.rho = cloud.rho;
  res.points.seed = cloud.seed;
  if (cloud.empty()) return res;

  const ScanSums s = scan_sums(flags, opt);
  res.points.points.resize(s.total());
  res.source.resize(s.total());
  parallel_chunks(flags.size(), s.tile, s.threads,
                  [&](std::size_t t, std::size_t begin, std::size_t end) {
                    std::uint64_t run = s.tile_offset(t);
                    for (std::size_t i = begin; i < end; ++i)
                      if (flags.flags[i]) {
                        res.points.points[run] = cloud[i];
                        res.source[run] = i;
                        ++run;
                      }
                  });
  return res;
}

}  // namespace hullfilter

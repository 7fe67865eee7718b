#pragma once

#include <cstddef>
#include <functional>

namespace hullfilter {

unsigned default_threads();

// Splits [0, n) into fixed-size chunks and runs fn(chunk_index, begin, end)
// for each. Chunk boundaries depend only on n and chunk_size, so any result
// keyed by chunk_index is independent of the worker count.
void parallel_chunks(std::size_t n, std::size_t chunk_size, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

inline std::size_t chunk_count(std::size_t n, std::size_t chunk_size) {
  return chunk_size == 0 ? 0 : (n + chunk_size - 1) / chunk_size;
}

}  // namespace hullfilter

// Minimal chunked parallel-for used by profile and baseline evaluation.

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace jsseg::detail {

/// Runs fn(begin, end) over contiguous chunks of [0, total) on up to
/// `threads` threads. Each chunk must write only its own slots; fn must not
/// throw. threads <= 1 runs inline.
inline void parallelChunks(std::size_t total, int threads,
                           const std::function<void(std::size_t, std::size_t)>& fn) {
  if (total == 0) {
    return;
  }
  const std::size_t workers =
      std::min(static_cast<std::size_t>(std::max(threads, 1)), total);
  if (workers <= 1) {
    fn(0, total);
    return;
  }
  const std::size_t chunk = (total + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(total, begin + chunk);
    if (begin >= end) {
      break;
    }
    pool.emplace_back(fn, begin, end);
  }
  for (std::thread& t : pool) {
    t.join();
  }
}

}  // namespace jsseg::detail

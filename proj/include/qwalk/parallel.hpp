#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace qwalk::parallel {

/// Worker cap from QWALK_THREADS; defaults to 1 when unset or unparsable.
inline unsigned thread_limit() {
  const char* env = std::getenv("QWALK_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  try {
    const long v = std::stol(env);
    if (v < 1) return 1;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<long>(v, 4L * hw));
  } catch (...) {
    return 1;
  }
}

/**
 * Calls body(i) for every i in [begin, end).  Each index must write only its
 * own output slot; results are then independent of the worker count.
 */
template <typename Body>
void for_each_index(std::size_t begin, std::size_t end, Body&& body,
                    std::size_t min_chunk = 64) {
  if (end <= begin) return;
  const std::size_t count = end - begin;
  const std::size_t workers =
      std::min<std::size_t>(thread_limit(), std::max<std::size_t>(1, count / min_chunk));
  if (workers <= 1) {
    for (std::size_t i = begin; i < end; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = begin + w * chunk;
    const std::size_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace qwalk::parallel

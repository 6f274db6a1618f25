#pragma once
// Thread-pool-free data parallelism: a blocking parallel_for over an index
// range with a fixed block decomposition.  Determinism policy: reductions
// never accumulate across threads in arrival order; callers either combine
// per-block partial results in block order or reduce with associative,
// order-insensitive operations (max/min).

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace specenc {

// Worker count resolution: explicit request > SPECENC_THREADS > hardware.
inline int resolve_threads(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SPECENC_THREADS")) {
    const std::string s(env);
    if (!s.empty() && s != "auto") {
      const int v = std::atoi(s.c_str());
      if (v > 0) return v;
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(block_index, begin, end) for a contiguous partition of [0, count)
// into `threads` nearly equal blocks.  Block boundaries depend only on
// (count, threads), so per-block partial results are reproducible.
inline void parallel_for_blocks(
    std::size_t count, int threads,
    const std::function<void(int, std::size_t, std::size_t)>& fn) {
  const std::size_t cap = count == 0 ? 1 : count;
  if (threads < 1) threads = 1;
  if (static_cast<std::size_t>(threads) > cap) threads = static_cast<int>(cap);
  if (threads == 1) {
    fn(0, 0, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::size_t base = count / threads, rem = count % threads;
  std::size_t begin = 0;
  for (int b = 0; b < threads; ++b) {
    const std::size_t len = base + (static_cast<std::size_t>(b) < rem ? 1 : 0);
    pool.emplace_back(fn, b, begin, begin + len);
    begin += len;
  }
  for (auto& t : pool) t.join();
}

}  // namespace specenc

#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace levykac {

inline int default_threads() {
  if (const char* env = std::getenv("LEVYKAC_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// Static block partition of [0, n); body(i) must only touch slot i of any
// shared output, which keeps results independent of the worker count.
template <typename Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
  if (threads <= 0) threads = default_threads();
  threads = static_cast<int>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::size_t chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::size_t lo = chunk * static_cast<std::size_t>(t);
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace levykac

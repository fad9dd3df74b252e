#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace gaitpair {

// Runs fn(i) for i in [0, n) across `workers` threads in contiguous chunks.
// Callers write results into preallocated slots indexed by i, so the output
// is identical for any worker count.
inline void parallel_for(std::size_t n, unsigned workers,
                         const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  if (workers <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  unsigned k = workers;
  if (static_cast<std::size_t>(k) > n) k = static_cast<unsigned>(n);
  std::vector<std::thread> threads;
  threads.reserve(k);
  std::size_t chunk = (n + k - 1) / k;
  for (unsigned w = 0; w < k; ++w) {
    std::size_t lo = static_cast<std::size_t>(w) * chunk;
    std::size_t hi = lo + chunk < n ? lo + chunk : n;
    if (lo >= hi) break;
    threads.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace gaitpair

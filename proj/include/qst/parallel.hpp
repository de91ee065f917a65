#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace qst {

// Runs fn(i) for i in [0, n) on up to hardware_concurrency() threads. Work
// items must be independent; results should be written to slot i of a
// pre-sized buffer so merge order never depends on scheduling.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t n_threads = std::max(1u, hw);
  if (n_threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  n_threads = std::min<std::size_t>(n_threads, n);
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) {
    pool.emplace_back([&, t]() {
      for (std::size_t i = t; i < n; i += n_threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace qst

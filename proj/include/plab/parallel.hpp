#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace plab {

// Runs fn(i) for i in [0, n). Each index gets the same inputs regardless of
// worker count, so results must be written into per-index slots by the caller.
inline void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::size_t nthreads = std::min<std::size_t>(workers, n);
  std::vector<std::thread> threads;
  threads.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) {
    threads.emplace_back([&, t]() {
      for (std::size_t i = t; i < n; i += nthreads) fn(i);
    });
  }
  for (auto& th : threads) th.join();
}

}  // namespace plab

#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace tiscat {

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Work is split into
/// contiguous chunks; callers write results to preallocated slots so the
/// outcome is independent of scheduling. First exception is rethrown.
inline void parallel_for(size_t n, int threads, const std::function<void(size_t)>& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const size_t nworkers = std::min<size_t>(threads, n);
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mutex;
  for (size_t t = 0; t < nworkers; ++t) {
    pool.emplace_back([&, t] {
      const size_t lo = n * t / nworkers;
      const size_t hi = n * (t + 1) / nworkers;
      try {
        for (size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace tiscat

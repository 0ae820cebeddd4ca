#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace qident {

/// Default worker count: QIDENT_THREADS if set and positive, otherwise the
/// hardware concurrency (at least 1).
int default_thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers using a fixed
/// block partition. Each index is visited exactly once; callers write into
/// per-index slots so the combined result does not depend on scheduling.
/// The first exception thrown by any worker is rethrown after all join.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body &&body) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      body(i);
    return;
  }
  std::size_t workers = std::min<std::size_t>(threads, count);
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (std::size_t t = 0; t < workers; ++t) {
    std::size_t begin = count * t / workers;
    std::size_t end = count * (t + 1) / workers;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i)
          body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
      }
    });
  }
  for (auto &th : pool)
    th.join();
  if (error)
    std::rethrow_exception(error);
}

} // namespace qident

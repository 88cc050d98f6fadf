#pragma once
// Deterministic index-space parallelism: task i always computes the same
// value regardless of the worker count, and results are consumed in index
// order, so aggregates are bit-identical for any number of threads.

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace cuelab {

/// Run fn(i) for i = 0..count-1 on up to `threads` workers.  Work is handed
/// out through a shared atomic counter; fn must write its result into
/// index-addressed storage.  The first exception thrown by any task is
/// rethrown on the calling thread after all workers join.
inline void parallel_for_index(long long count, int threads,
                               const std::function<void(long long)>& fn) {
  if (count <= 0) return;
  int t = threads < 1 ? 1 : threads;
  if (static_cast<long long>(t) > count) t = static_cast<int>(count);
  if (t == 1) {
    for (long long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long long> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(t));
  for (int w = 0; w < t; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const long long i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          failed.store(true);
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace cuelab

#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace louvre {

/// Worker count for `jobs` (0 = one per hardware thread).
unsigned resolve_jobs(unsigned jobs);

/// Evaluates f(0..n-1) on up to `jobs` threads; results are returned in index
/// order so the output does not depend on scheduling. The first exception
/// thrown by any task is rethrown.
template <typename F>
auto parallel_map(std::size_t n, unsigned jobs, F&& f) -> std::vector<decltype(f(std::size_t{}))>
{
  using R = decltype(f(std::size_t{}));
  std::vector<R> out(n);
  const unsigned workers = std::min<std::size_t>(resolve_jobs(jobs), n ? n : 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back(work);
  for (auto& t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
  return out;
}

}  // namespace louvre

#pragma once

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hdw::sim {

/// Runs body(i) for i in [0, count) on up to `threads` workers, in contiguous
/// chunks. Results must be written to per-index slots; the caller reduces in
/// index order. The first exception (lowest index) is rethrown after join.
template <typename Body>
void parallel_for(int count, int threads, Body&& body) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::mutex mu;
  int failed_at = count;
  std::exception_ptr failure;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    const int lo = static_cast<int>(static_cast<long long>(count) * w / threads);
    const int hi = static_cast<int>(static_cast<long long>(count) * (w + 1) / threads);
    pool.emplace_back([&, lo, hi] {
      for (int i = lo; i < hi; ++i) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (i < failed_at) {
            failed_at = i;
            failure = std::current_exception();
          }
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace hdw::sim

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace factorix {

/// Wall-clock budget shared by all workers of one task. Once expired it
/// stays expired, so every worker sees the same verdict.
class Budget {
public:
  explicit Budget(double seconds = 0.0)
      : start_(std::chrono::steady_clock::now()), seconds_(seconds) {}

  bool expired() const {
    if (hit_.load(std::memory_order_relaxed))
      return true;
    if (seconds_ <= 0.0)
      return false;
    if (elapsed() > seconds_) {
      hit_.store(true, std::memory_order_relaxed);
      return true;
    }
    return false;
  }
  bool was_hit() const { return hit_.load(std::memory_order_relaxed); }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  double seconds() const { return seconds_; }

private:
  std::chrono::steady_clock::time_point start_;
  double seconds_;
  mutable std::atomic<bool> hit_{false};
};

inline unsigned resolve_threads(int requested) {
  if (requested > 0)
    return static_cast<unsigned>(requested);
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, n) on up to `threads` workers. Indices are
/// handed out one at a time, so callers that need determinism must key
/// results by index. The first exception is rethrown after all workers
/// have stopped.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body &&body) {
  threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n)
        return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back(worker);
  for (auto &t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
}

/// Calls f(indices) for every k-subset of [0, n) in lexicographic order;
/// stops early when f returns false.
template <class F>
void for_each_combination(std::size_t n, std::size_t k, F &&f) {
  if (k > n)
    return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i)
    idx[i] = i;
  for (;;) {
    if (!f(static_cast<const std::vector<std::size_t> &>(idx)))
      return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1)
      --i;
    if (i == 0)
      return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j)
      idx[j] = idx[j - 1] + 1;
  }
}

} // namespace factorix

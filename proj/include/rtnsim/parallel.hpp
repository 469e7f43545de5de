#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace rtn {

inline int effective_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs fn(i) for i in [0, n). Results must be written to index-owned
/// slots; the schedule is unspecified but slot writes make the output
/// deterministic.
inline void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn,
                         int threads = 0) {
  const int nt = effective_threads(threads);
  if (n <= 0) return;
  if (nt == 1 || n == 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  pool.reserve(nt);
  for (int k = 0; k < nt; ++k) {
    pool.emplace_back([&] {
      for (;;) {
        const std::int64_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

/// Deterministic parallel reduction over [0, n) split into fixed-size
/// blocks. Workers produce block partials concurrently; partials are merged
/// strictly in block-index order, so the result is independent of thread
/// count and scheduling for a fixed block size.
///
/// Partial must be default-constructible.
/// worker(block_begin, block_end, partial&) accumulates one block.
/// merge(partial&&) consumes partials in index order (single-threaded).
template <typename Partial>
void ordered_block_reduce(std::int64_t n, std::int64_t block_size,
                          const std::function<void(std::int64_t, std::int64_t, Partial&)>& worker,
                          const std::function<void(Partial&&)>& merge,
                          int threads = 0) {
  if (n <= 0) return;
  if (block_size <= 0) block_size = n;
  const std::int64_t n_blocks = (n + block_size - 1) / block_size;
  const int nt = effective_threads(threads);

  if (nt == 1 || n_blocks == 1) {
    for (std::int64_t b = 0; b < n_blocks; ++b) {
      Partial p{};
      worker(b * block_size, std::min(n, (b + 1) * block_size), p);
      merge(std::move(p));
    }
    return;
  }

  std::mutex m;
  std::condition_variable cv;
  std::vector<std::pair<std::int64_t, Partial>> parked;  // out-of-order partials
  std::int64_t next_merge = 0;
  bool merging = false;  // exactly one thread drains at a time
  std::atomic<std::int64_t> next_block{0};
  const std::size_t park_limit = static_cast<std::size_t>(4 * nt);
  std::exception_ptr error;

  auto deliver = [&](std::int64_t b, Partial&& p) {
    std::unique_lock<std::mutex> lock(m);
    cv.wait(lock, [&] { return parked.size() < park_limit || b == next_merge || error; });
    if (error) return;
    parked.emplace_back(b, std::move(p));
    if (merging) {
      cv.notify_all();
      return;
    }
    merging = true;
    // drain everything contiguous with next_merge, strictly in order
    for (;;) {
      auto it = parked.begin();
      for (; it != parked.end(); ++it)
        if (it->first == next_merge) break;
      if (it == parked.end()) break;
      Partial ready = std::move(it->second);
      parked.erase(it);
      ++next_merge;
      lock.unlock();
      merge(std::move(ready));
      lock.lock();
    }
    merging = false;
    cv.notify_all();
  };

  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int k = 0; k < nt; ++k) {
    pool.emplace_back([&] {
      for (;;) {
        const std::int64_t b = next_block.fetch_add(1);
        if (b >= n_blocks) return;
        Partial p{};
        try {
          worker(b * block_size, std::min(n, (b + 1) * block_size), p);
        } catch (...) {
          std::lock_guard<std::mutex> lock(m);
          if (!error) error = std::current_exception();
          cv.notify_all();
          return;
        }
        deliver(b, std::move(p));
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace rtn

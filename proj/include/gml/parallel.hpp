#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace gml {

// Runs fn(i) for every i in [0, n) using an atomic index pool. With
// workers <= 1 the loop runs inline on the calling thread. The first
// exception aborts the pool and is rethrown after all workers join.
inline void parallel_for(int workers, std::size_t n,
                         const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr first;
  std::mutex err_mu;
  auto body = [&] {
    while (!abort.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      try {
        fn(i);
      } catch (...) {
        std::scoped_lock lk(err_mu);
        if (!first) first = std::current_exception();
        abort.store(true);
      }
    }
  };
  const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  std::vector<std::thread> pool;
  pool.reserve(count);
  for (std::size_t w = 0; w < count; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

}  // namespace gml

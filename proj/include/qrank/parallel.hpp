#ifndef QRANK_PARALLEL_HPP
#define QRANK_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "qrank/types.hpp"

namespace qrank {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(0) .. fn(count - 1) on up to `threads` workers (0 = all cores).
/// Tasks are handed out in index order. The first exception is rethrown
/// after every worker has stopped.
template <typename Fn>
void parallel_for(Index count, unsigned threads, Fn&& fn) {
  const auto workers = static_cast<Index>(std::min<Index>(resolve_threads(threads), count));
  if (workers <= 1) {
    for (Index i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<Index> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (Index w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (Index i = next++; i < count && !failed; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            failed = true;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace qrank

#endif  // QRANK_PARALLEL_HPP

#pragma once

// Minimal static-partition thread pool helpers. Work is split into contiguous
// chunks by index, so results are deterministic for a fixed thread count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace favest {

namespace detail {
inline int default_thread_count() {
  if (const char* env = std::getenv("FAVEST_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

inline std::atomic<int>& thread_count_storage() {
  static std::atomic<int> n{default_thread_count()};
  return n;
}
}  // namespace detail

inline int num_threads() { return detail::thread_count_storage().load(); }
inline void set_num_threads(int n) { detail::thread_count_storage().store(std::max(1, n)); }

/// Calls fn(chunk, begin, end) for `chunks` contiguous slices of [0, n).
template <typename Fn>
void parallel_chunks(std::size_t n, int chunks, Fn&& fn) {
  chunks = static_cast<int>(std::min<std::size_t>(std::max(chunks, 1), std::max<std::size_t>(n, 1)));
  if (chunks <= 1) {
    fn(0, std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chunks));
  workers.reserve(static_cast<std::size_t>(chunks));
  for (int c = 0; c < chunks; ++c) {
    const std::size_t b = n * static_cast<std::size_t>(c) / static_cast<std::size_t>(chunks);
    const std::size_t e = n * static_cast<std::size_t>(c + 1) / static_cast<std::size_t>(chunks);
    workers.emplace_back([&, c, b, e] {
      try {
        fn(c, b, e);
      } catch (...) {
        errors[static_cast<std::size_t>(c)] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

/// Calls fn(i) for every i in [0, n) using num_threads() workers.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  parallel_chunks(n, num_threads(), [&](int, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) fn(i);
  });
}

}  // namespace favest

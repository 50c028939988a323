#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace levyheat {

/// Runs body(from, to) over contiguous chunks of [0, n) on up to `threads`
/// threads. Chunk boundaries depend only on n and threads. The first exception
/// thrown by any chunk is rethrown after all threads join.
template <typename Body>
void parallel_chunks(std::size_t n, int threads, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    if (n > 0) body(std::size_t{0}, n);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t from = w * chunk;
      const std::size_t to = std::min(n, from + chunk);
      if (from >= to) break;
      pool.emplace_back([&, from, to] {
        try {
          body(from, to);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

/// parallel_chunks with a per-index body.
template <typename Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
  parallel_chunks(n, threads, [&](std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i) body(i);
  });
}

}  // namespace levyheat

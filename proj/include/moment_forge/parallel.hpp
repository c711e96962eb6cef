#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace moment_forge {

/// Splits [0, n) into `chunks` contiguous ranges and evaluates `fn(begin, end)`
/// for each on a small worker pool. Results come back in chunk order, so a
/// caller that reduces them left to right gets the same bits whatever the
/// number of hardware threads.
template <class Result, class Fn>
std::vector<Result> ordered_chunks(std::size_t n, std::size_t chunks, Fn&& fn) {
  chunks = std::max<std::size_t>(1, std::min(chunks, std::max<std::size_t>(n, 1)));
  std::vector<Result> out(chunks);
  auto bound = [&](std::size_t c) { return n * c / chunks; };

  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, chunks);
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) out[c] = fn(bound(c), bound(c + 1));
    return out;
  }

  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t c = w; c < chunks; c += workers) out[c] = fn(bound(c), bound(c + 1));
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace moment_forge

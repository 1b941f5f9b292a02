#ifndef WGEO_PARALLEL_HPP
#define WGEO_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace wgeo {

/// Thread cap from the WGEO_THREADS environment variable; 1 when unset or
/// malformed.
inline unsigned threads_from_env() {
  const char* env = std::getenv("WGEO_THREADS");
  if (env == nullptr) return 1;
  try {
    long v = std::stol(env);
    return v > 0 ? static_cast<unsigned>(v) : 1U;
  } catch (const std::exception&) {
    return 1;
  }
}

/// Runs fn(i) for i in [0, n) on up to `threads` threads, in contiguous
/// chunks. fn must only write to per-index state. The first exception thrown
/// by any chunk is rethrown.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(1U, threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w * chunk; i < std::min(n, (w + 1) * chunk); ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace wgeo

#endif  // WGEO_PARALLEL_HPP

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bclab {

/// Number of worker threads to use when `requested` is 0.
inline unsigned default_workers() {
  return std::max(1U, std::thread::hardware_concurrency());
}

/// Evaluates fn(path_index) for every path, striding indices across workers.
/// Each path derives its own rng stream from its index, so results do not
/// depend on the worker count.
template <class Result, class Fn>
std::vector<Result> map_paths(std::uint64_t paths, unsigned workers, Fn fn) {
  std::vector<Result> out(paths);
  if (workers == 0) workers = default_workers();
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(paths, 1)));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < paths; ++i) out[i] = fn(i);
    return out;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t i = w; i < paths; i += workers) out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

/// Normal-approximation half-width z * sqrt(p (1 - p) / paths).
inline double binomial_radius(double p, std::uint64_t paths, double z) {
  return z * std::sqrt(p * (1.0 - p) / static_cast<double>(paths));
}

}  // namespace bclab

#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace convexforest {

// Splits [0, count) into `jobs` contiguous chunks and runs fn(chunk, begin,
// end) for each, on separate threads when jobs > 1. Chunk boundaries depend
// only on (count, jobs), so callers merging per-chunk results in chunk order
// get output independent of scheduling. The first exception is rethrown.
template <class Fn>
void ParallelChunks(std::uint64_t count, int jobs, Fn&& fn) {
  jobs = std::max(1, jobs);
  if (count < static_cast<std::uint64_t>(jobs)) jobs = static_cast<int>(std::max<std::uint64_t>(count, 1));
  const std::uint64_t step = count / jobs, extra = count % jobs;
  auto bounds = [&](int c) {
    const std::uint64_t b = c * step + std::min<std::uint64_t>(c, extra);
    return std::pair{b, b + step + (static_cast<std::uint64_t>(c) < extra ? 1 : 0)};
  };
  if (jobs == 1) {
    fn(0, std::uint64_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> threads;
  for (int c = 0; c < jobs; ++c) {
    threads.emplace_back([&, c] {
      try {
        auto [b, e] = bounds(c);
        fn(c, b, e);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace convexforest

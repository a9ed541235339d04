#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ldt {

// Deterministic block-partitioned parallel for. Work item i always lands in
// block i * nblocks / n, independent of scheduling, and callers combine
// per-block results in block order, so outputs do not depend on worker count.
inline void parallel_blocks(std::uint64_t n, int workers,
                            const std::function<void(std::uint64_t lo, std::uint64_t hi, int block)>& fn) {
  if (n == 0) return;
  int nb = workers <= 1 ? 1 : workers * 4;
  if (static_cast<std::uint64_t>(nb) > n) nb = static_cast<int>(n);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges(nb);
  for (int b = 0; b < nb; b++)
    ranges[b] = {n * b / nb, n * (b + 1) / nb};
  if (workers <= 1) {
    for (int b = 0; b < nb; b++) fn(ranges[b].first, ranges[b].second, b);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  for (int w = 0; w < workers; w++) {
    pool.emplace_back([&] {
      for (;;) {
        int b = next.fetch_add(1);
        if (b >= nb) return;
        try {
          fn(ranges[b].first, ranges[b].second, b);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace ldt

#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

// Stratified work runner.
//
// The determinism contract is: partition work into strata, give each stratum
// its own RNG substream, let any number of threads pick strata off a shared
// counter, and have every stratum write only to its own output slot.
// Aggregation then happens serially in stratum order, so the result is a pure
// function of (seed, budgets) no matter how many threads ran.

namespace graphon {

// Resolve a thread-count request: n >= 1 is taken literally, n <= 0 falls
// back to the GRAPHON_THREADS environment variable and then to the hardware.
int resolve_threads(int requested);

inline void for_each_stratum(std::int64_t n_strata, int threads,
                             const std::function<void(std::int64_t)>& body) {
  if (threads <= 1 || n_strata <= 1) {
    for (std::int64_t s = 0; s < n_strata; ++s) body(s);
    return;
  }
  std::atomic<std::int64_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      std::int64_t s = cursor.fetch_add(1);
      if (s >= n_strata) return;
      body(s);
    }
  };
  std::vector<std::thread> pool;
  int n = threads < static_cast<int>(n_strata) ? threads : static_cast<int>(n_strata);
  pool.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace graphon

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace lexichoice {

/// Worker count: LEXICHOICE_THREADS caps it, 0/unset means hardware default.
inline int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  hw = std::min(hw, 8);
  if (const char* env = std::getenv("LEXICHOICE_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, cap);
  }
  return hw;
}

/// Runs fn(i) for i in [0, count) across workers. fn must be pure per index;
/// callers reduce their own per-index results so verdicts stay
/// order-independent.
template <class F>
void parallel_for(std::size_t count, F&& fn) {
  int workers = worker_count();
  if (workers <= 1 || count < 64) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      constexpr std::size_t kChunk = 16;
      while (true) {
        std::size_t start = next.fetch_add(kChunk);
        if (start >= count) return;
        std::size_t stop = std::min(count, start + kChunk);
        for (std::size_t i = start; i < stop; ++i) fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace lexichoice

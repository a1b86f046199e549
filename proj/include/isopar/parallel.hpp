// Minimal fork-join helper for independent per-point work. Results must be
// written to preassigned slots; the helper guarantees nothing about order.
// Pool size comes from ISOPAR_THREADS when set, hardware otherwise.
#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace isopar {

inline int pool_size() {
  if (const char* env = std::getenv("ISOPAR_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

template <class Fn>
void parallel_for(int count, Fn&& fn) {
  const int workers = std::min(pool_size(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto drain = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers - 1);
  for (int t = 0; t + 1 < workers; ++t) threads.emplace_back(drain);
  drain();
  for (auto& t : threads) t.join();
}

}  // namespace isopar

#include "kwise/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace kwise {

namespace {
std::atomic<int> g_thread_cap{1};
}

void set_thread_cap(int threads) { g_thread_cap = std::max(1, threads); }
int thread_cap() { return g_thread_cap; }

void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t,
                                              std::size_t)>& fn) {
  if (n == 0) return;
  // Chunk geometry depends only on n so results are reproducible for any
  // worker count.
  std::size_t chunk = std::max<std::size_t>(1, n / 64);
  std::size_t nchunks = (n + chunk - 1) / chunk;
  int workers = std::min<int>(thread_cap(), static_cast<int>(nchunks));
  if (workers <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c)
      fn(c, c * chunk, std::min(n, (c + 1) * chunk));
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t c = next.fetch_add(1); c < nchunks; c = next.fetch_add(1))
        fn(c, c * chunk, std::min(n, (c + 1) * chunk));
    });
  for (auto& th : pool) th.join();
}

}  // namespace kwise

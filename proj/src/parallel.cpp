#include "isaclim/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace isac {

namespace {
std::atomic<int> g_max_threads{0};

int env_cap() {
  if (const char* v = std::getenv("ISAC_THREADS")) {
    const int n = std::atoi(v);
    if (n > 0) return n;
  }
  return 0;
}
}  // namespace

void set_max_threads(int n) { g_max_threads.store(n < 0 ? 0 : n); }

int max_threads() {
  int cap = g_max_threads.load();
  if (cap == 0) cap = env_cap();
  const int hw = std::max(1u, std::thread::hardware_concurrency());
  return cap > 0 ? std::min(cap, hw) : hw;
}

namespace detail {

void parallel_for_impl(std::int64_t n,
                       const std::function<void(std::int64_t)>& body) {
  if (n <= 0) return;
  const int threads = static_cast<int>(
      std::min<std::int64_t>(max_threads(), n));
  if (threads <= 1) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= n) return;
      body(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads) - 1);
  for (int t = 0; t < threads - 1; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace detail
}  // namespace isac

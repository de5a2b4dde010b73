#include "voxelvol/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>

namespace voxelvol {

namespace {
std::atomic<int> g_default_threads{0};
}

void set_default_threads(int n) { g_default_threads.store(n); }

int effective_threads(int requested) {
  if (requested > 0) return requested;
  int def = g_default_threads.load();
  if (def > 0) return def;
  if (const char* env = std::getenv("VOXELVOL_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_chunks(std::int64_t n, int threads,
                     const std::function<void(std::int64_t, std::int64_t, int)>& fn) {
  int nt = std::min<std::int64_t>(effective_threads(threads), std::max<std::int64_t>(n, 1));
  if (nt <= 1 || n <= 1) {
    fn(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::int64_t per = (n + nt - 1) / nt;
  for (int c = 0; c < nt; ++c) {
    std::int64_t b = c * per, e = std::min<std::int64_t>(n, b + per);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e, c] { fn(b, e, c); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace voxelvol

#include "barron/threads.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace barron {

namespace {
int g_max_threads = 1;
}

void set_max_threads(int n) { g_max_threads = std::max(1, n); }
int max_threads() { return g_max_threads; }

void for_each_chunk(std::int64_t n, std::int64_t chunk,
                    const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn) {
  if (n <= 0) return;
  const std::int64_t nchunks = (n + chunk - 1) / chunk;
  const int workers = static_cast<int>(std::min<std::int64_t>(g_max_threads, nchunks));
  if (workers <= 1) {
    for (std::int64_t c = 0; c < nchunks; ++c) {
      const std::int64_t begin = c * chunk;
      fn(c, begin, std::min(chunk, n - begin));
    }
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::int64_t c = next.fetch_add(1);
        if (c >= nchunks) return;
        const std::int64_t begin = c * chunk;
        try {
          fn(c, begin, std::min(chunk, n - begin));
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace barron

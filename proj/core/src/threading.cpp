#include "curvlet/threading.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace curvlet {

int default_worker_count() {
  if (const char* env = std::getenv("CURVLET_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
      // fall through to hardware default on unparsable values
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

int resolve_worker_count(int requested) {
  return requested >= 1 ? requested : default_worker_count();
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  const int n_threads = std::min<std::size_t>(static_cast<std::size_t>(resolve_worker_count(workers)),
                                              count == 0 ? 1 : count);
  if (n_threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  std::exception_ptr first_error;
  std::mutex error_mutex;

  const std::size_t chunk = (count + static_cast<std::size_t>(n_threads) - 1) / static_cast<std::size_t>(n_threads);
  for (int t = 0; t < n_threads; ++t) {
    const std::size_t begin = static_cast<std::size_t>(t) * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace curvlet

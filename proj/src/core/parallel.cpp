#include "doflab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace doflab {

std::size_t effective_workers(std::size_t requested) {
  std::size_t w = std::max<std::size_t>(requested, 1);
  if (const char* cap = std::getenv("DOFLAB_MAX_WORKERS")) {
    try {
      const long v = std::stol(cap);
      if (v >= 1) w = std::min(w, static_cast<std::size_t>(v));
    } catch (...) {
    }
  }
  return w;
}

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& job) {
  workers = std::min(effective_workers(workers), count);
  std::vector<std::exception_ptr> errors(count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            job(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace doflab

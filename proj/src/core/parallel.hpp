#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace shapval {

// Runs body(i) for i in [0, count) on up to `workers` threads. Tasks must
// write only to their own slots; every task seeds its own random stream, so
// the result is identical for any worker count.
template <typename Body>
void parallel_for(std::size_t count, int workers, const Body& body) {
  if (count == 0) return;
  std::size_t nthreads = workers < 1 ? 1 : static_cast<std::size_t>(workers);
  if (nthreads > count) nthreads = count;
  if (nthreads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> cursor{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace shapval

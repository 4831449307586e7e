#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace emso {

// Global worker-count knob (CLI --threads). 0 means hardware concurrency.
void set_thread_count(int t);
int thread_count();

// Runs fn(chunk, begin, end) over [0, total) split into `chunks` fixed slices.
// Chunk boundaries depend only on (total, chunks), never on the worker count,
// so per-chunk results merged in chunk order are reproducible. The first
// exception thrown by any worker is rethrown on the calling thread.
inline void parallel_chunks(std::uint64_t total, std::uint64_t chunks,
                            const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& fn) {
  if (total == 0) return;
  if (chunks > total) chunks = total;
  if (chunks == 0) chunks = 1;
  auto slice = [&](std::uint64_t c) {
    std::uint64_t begin = total * c / chunks;
    std::uint64_t end = total * (c + 1) / chunks;
    fn(c, begin, end);
  };
  int workers = thread_count();
  if (workers <= 1 || chunks == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) slice(c);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        slice(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(chunks);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  int spawn = workers < static_cast<int>(chunks) ? workers : static_cast<int>(chunks);
  pool.reserve(spawn - 1);
  for (int i = 1; i < spawn; ++i) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace emso

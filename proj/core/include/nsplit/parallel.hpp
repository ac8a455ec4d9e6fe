#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace nsplit {

// Resolve a requested worker count; 0 means "ask the hardware".
inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? hc : 1;
}

// Scans jobs [0, n_jobs) for the lowest-index one yielding a result.
//
// Work is dealt out in fixed-size chunks claimed in ascending order; every
// chunk at or below the lowest hit chunk is scanned to completion and hits
// are merged by job index. The returned hit is therefore exactly the one a
// sequential scan would find first, for any thread count. Exceptions from
// scan() are rethrown after all workers stop.
template <typename R, typename Scan>
std::optional<R> parallel_first_hit(std::uint64_t n_jobs, unsigned threads, Scan scan,
                                    std::uint64_t chunk_size = 1024) {
  if (threads == 0) threads = 1;
  if (n_jobs == 0) return std::nullopt;
  if (threads == 1 || n_jobs <= chunk_size) {
    for (std::uint64_t j = 0; j < n_jobs; ++j)
      if (auto r = scan(j)) return r;
    return std::nullopt;
  }

  const std::uint64_t n_chunks = (n_jobs + chunk_size - 1) / chunk_size;
  std::atomic<std::uint64_t> next_chunk{0};
  std::atomic<std::uint64_t> best_chunk{n_chunks};
  std::atomic<bool> failed{false};
  std::mutex merge_mu;
  std::uint64_t best_job = 0;
  std::optional<R> best;
  std::exception_ptr error;

  auto worker = [&] {
    try {
      for (;;) {
        const std::uint64_t c = next_chunk.fetch_add(1);
        if (c >= n_chunks || c > best_chunk.load() || failed.load()) return;
        const std::uint64_t lo = c * chunk_size;
        const std::uint64_t hi = std::min(n_jobs, lo + chunk_size);
        for (std::uint64_t j = lo; j < hi; ++j) {
          if (auto r = scan(j)) {
            std::lock_guard<std::mutex> lk(merge_mu);
            if (!best || j < best_job) {
              best = std::move(r);
              best_job = j;
              std::uint64_t prev = best_chunk.load();
              while (c < prev && !best_chunk.compare_exchange_weak(prev, c)) {
              }
            }
            break;  // later jobs in this chunk cannot beat job j
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lk(merge_mu);
      if (!error) error = std::current_exception();
      failed.store(true);
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return best;
}

}  // namespace nsplit

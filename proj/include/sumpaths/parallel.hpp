#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace sumpaths {

inline unsigned default_workers() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

/// Splits [0,n) into fixed-size chunks and calls fn(chunk_index, begin, end)
/// for each, using up to `workers` threads. Chunk boundaries depend only on
/// (n, chunk_size), never on the worker count, so callers that keep one
/// accumulator per chunk and merge them in chunk order get results that are
/// identical for any number of workers.
template <class Fn>
void for_chunks(std::uint64_t n, unsigned workers, std::uint64_t chunk_size,
                Fn&& fn) {
  if (n == 0) return;
  if (chunk_size == 0) chunk_size = 1;
  const std::uint64_t n_chunks = (n + chunk_size - 1) / chunk_size;
  auto run_chunk = [&](std::uint64_t c) {
    const std::uint64_t b = c * chunk_size;
    const std::uint64_t e = std::min(n, b + chunk_size);
    fn(c, b, e);
  };
  if (workers <= 1 || n_chunks == 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= n_chunks) return;
      run_chunk(c);
    }
  };
  const unsigned nt = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, n_chunks));
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned i = 0; i < nt; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

inline std::uint64_t chunk_count(std::uint64_t n, std::uint64_t chunk_size) {
  if (n == 0) return 0;
  if (chunk_size == 0) chunk_size = 1;
  return (n + chunk_size - 1) / chunk_size;
}

}  // namespace sumpaths

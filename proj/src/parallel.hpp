#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace permlab::detail {

/// Runs body(chunk) for chunk in [0, chunks) on `workers` threads. Chunks are
/// handed out in order from a shared counter; callers keep per-chunk results
/// and merge them in chunk order, which keeps output independent of the
/// worker count. The first exception thrown by any chunk is rethrown.
inline void for_each_chunk(std::size_t chunks, unsigned workers, const std::function<void(std::size_t)>& body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(chunks, 1))));
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::mutex mu;
  std::size_t next = 0;
  std::exception_ptr error;
  auto run = [&] {
    for (;;) {
      std::size_t c;
      {
        std::lock_guard lock(mu);
        if (error || next >= chunks) return;
        c = next++;
      }
      try {
        body(c);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

/// [begin, end) of chunk c when `total` items are cut into `chunks` pieces.
inline std::pair<std::uint64_t, std::uint64_t> chunk_range(std::uint64_t total, std::size_t chunks, std::size_t c) {
  const std::uint64_t base = total / chunks, extra = total % chunks;
  const std::uint64_t begin = c * base + std::min<std::uint64_t>(c, extra);
  return {begin, begin + base + (c < extra ? 1 : 0)};
}

}  // namespace permlab::detail

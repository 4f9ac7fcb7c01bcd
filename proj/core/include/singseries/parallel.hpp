#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "singseries/errors.hpp"

namespace singseries {

// Deterministic sharded reduction over the index range [0, n).
//
// The range is split into fixed-size chunks; workers claim whole chunks and
// write each chunk's accumulator into a slot addressed by chunk id; the
// chunk results are folded sequentially in chunk order afterwards. Because
// the chunk size is a fixed constant of the call site (never derived from
// the worker count) and the fold order is fixed, the result is bit-for-bit
// identical for every worker count >= 1, including floating-point sums.
//
// Body processes [lo, hi) into its accumulator; fold merges right into left.
template <typename Acc, typename Body, typename Fold>
Acc sharded_reduce(std::uint64_t n, std::uint64_t chunk, unsigned shards, Acc init, Body body,
                   Fold fold) {
  if (chunk == 0) raise(errc::config, "sharded_reduce: chunk size must be positive");
  if (shards == 0) shards = 1;
  if (n == 0) return init;

  std::uint64_t num_chunks = (n + chunk - 1) / chunk;
  std::vector<Acc> partials(num_chunks, init);

  if (shards == 1 || num_chunks == 1) {
    for (std::uint64_t c = 0; c < num_chunks; ++c) {
      std::uint64_t lo = c * chunk;
      std::uint64_t hi = lo + chunk < n ? lo + chunk : n;
      body(lo, hi, partials[c]);
    }
  } else {
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
      for (;;) {
        std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
        if (c >= num_chunks) break;
        std::uint64_t lo = c * chunk;
        std::uint64_t hi = lo + chunk < n ? lo + chunk : n;
        body(lo, hi, partials[c]);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(shards);
    for (unsigned t = 0; t < shards; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  Acc out = std::move(partials[0]);
  for (std::uint64_t c = 1; c < num_chunks; ++c) fold(out, partials[c]);
  return out;
}

}  // namespace singseries

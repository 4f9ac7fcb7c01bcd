#pragma once

#include <cstdint>

namespace singseries {

// splitmix64 finalizer: bijective 64-bit mix (Stafford/Steele variant used
// by the reference splitmix64). Deterministic on every platform.
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return splitmix64_mix(state_);
  }

private:
  std::uint64_t state_;
};

// Independent substream key for (seed, a, b). Feeding each component through
// the finalizer before combining keeps distinct (a, b) pairs decorrelated,
// which is what makes sampling order (and so sharding) irrelevant.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = splitmix64_mix(seed + 0x9E3779B97F4A7C15ULL);
  x = splitmix64_mix(x ^ (a + 0xD1B54A32D192ED03ULL));
  x = splitmix64_mix(x ^ (b + 0x8CB92BA72F3D8DD7ULL));
  return x;
}

// Lemire multiply-shift: maps a uniform 64-bit word onto [0, bound) with
// negligible bias for the bounds used here (bound <= 2^31).
inline std::uint64_t bounded(std::uint64_t word, std::uint64_t bound) {
  return (std::uint64_t)(((unsigned __int128)word * bound) >> 64);
}

}  // namespace singseries

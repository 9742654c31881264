#pragma once

#include <cstdint>

namespace sumpaths {

/// SplitMix64 finalizer; a 64-bit bijection with good avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

/// Counter-based generator: output n is mix64(key + n*GOLDEN), i.e. the
/// SplitMix64 stream seeded at `key`. Counter-based so that parallel
/// tasks can be given independent, reproducible streams regardless of
/// scheduling.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() {
    counter_ += 1;
    return mix64(key_ + counter_ * GOLDEN);
  }

  /// Uniform draw in [0,1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  std::uint64_t key() const { return key_; }

 private:
  static constexpr std::uint64_t GOLDEN = 0x9E3779B97F4A7C15ull;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Derives the key of sub-stream `stream` from a master seed. Distinct
/// (master, stream) pairs give unrelated keys.
constexpr std::uint64_t stream_key(std::uint64_t master, std::uint64_t stream) {
  return mix64(mix64(master ^ 0x6A09E667F3BCC909ull) ^
               mix64(stream * 0xD6E8FEB86659FD93ull + 0xA54FF53A5F1D36F1ull));
}

}  // namespace sumpaths

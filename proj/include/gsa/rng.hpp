#pragma once

#include <cstdint>

namespace gsa {

/// Counter-based generator: the k-th draw of a stream is a pure function of
/// (seed, stream, k), so independent substreams fall out of one user seed
/// and any draw can be reproduced without replaying the sequence.
///
/// Stream assignments used across the library:
///   kStreamX / kStreamZ          the two pick-freeze input samples
///   kStreamLhsBase + dim         per-dimension LHS permutation and jitter
///   kStreamBootstrapBase + b     resample indices of bootstrap replicate b
inline constexpr std::uint64_t kStreamX = 0;
inline constexpr std::uint64_t kStreamZ = 1;
inline constexpr std::uint64_t kStreamLhsBase = 0x100;
inline constexpr std::uint64_t kStreamBootstrapBase = 0x10000;

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix64(mix64(seed) ^ (stream + 0x632BE59BD9B4E019ULL))) {}

  std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  /// Uniform in [0, 1) with 53 random mantissa bits.
  double next_uniform01() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound); unbiased via rejection. bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    if (bound < 2) return 0;
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  // splitmix64 finalizer
  static std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace gsa

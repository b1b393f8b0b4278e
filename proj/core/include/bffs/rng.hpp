#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace bffs {

/// Deterministic 64-bit PRNG: xoshiro256++ with splitmix64 state expansion.
///
/// The algorithm is pinned for the whole project so that a (seed, schedule)
/// pair regenerates the exact same file sizes and payloads on any platform.
/// Golden tests assert the first outputs for fixed seeds; do not change the
/// algorithm without regenerating every golden value.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept;

  std::uint64_t next_u64() noexcept;

  /// Uniform in [0, 1) with 53 significant bits.
  double next_unit() noexcept;

  /// Uniform integer in [lo, hi). Requires lo < hi.
  std::uint64_t next_in_range(std::uint64_t lo, std::uint64_t hi) noexcept;

  void fill_bytes(std::span<std::uint8_t> out) noexcept;

 private:
  std::uint64_t state_[4];
};

}  // namespace bffs

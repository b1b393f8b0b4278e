#include "bffs/rng.hpp"

#include <bit>
#include <cstring>

namespace bffs {
namespace {

// splitmix64 step, used only to expand the 64-bit seed into 256 bits of
// state. Reference constants from Vigna's public-domain implementation.
std::uint64_t splitmix64_next(std::uint64_t& x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) noexcept {
  std::uint64_t x = seed;
  for (auto& s : state_) s = splitmix64_next(x);
}

std::uint64_t Rng::next_u64() noexcept {
  const std::uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = std::rotl(state_[3], 45);
  return result;
}

double Rng::next_unit() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::next_in_range(std::uint64_t lo, std::uint64_t hi) noexcept {
  return lo + next_u64() % (hi - lo);
}

// The byte stream is the u64 stream serialized little-endian, regardless of
// host order, so generated payloads are identical across platforms.
void Rng::fill_bytes(std::span<std::uint8_t> out) noexcept {
  std::size_t i = 0;
  while (i + 8 <= out.size()) {
    std::uint64_t word = next_u64();
    if constexpr (std::endian::native == std::endian::little) {
      std::memcpy(out.data() + i, &word, 8);
    } else {
      for (int k = 0; k < 8; ++k) {
        out[i + k] = static_cast<std::uint8_t>(word >> (8 * k));
      }
    }
    i += 8;
  }
  if (i < out.size()) {
    std::uint64_t word = next_u64();
    for (; i < out.size(); ++i) {
      out[i] = static_cast<std::uint8_t>(word & 0xFFu);
      word >>= 8;
    }
  }
}

}  // namespace bffs

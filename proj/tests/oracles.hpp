#pragma once

#include <cmath>
#include <cstdint>
#include <span>

// Independent oracles for golden values. Everything here is computed from
// first principles (bitwise polynomial division, numerical quadrature) and
// must stay decoupled from the library implementations it checks.

namespace bffs::test {

// CRC-32 by bitwise long division with the reflected IEEE 802.3 polynomial.
// No tables, no library calls.
inline std::uint32_t crc32_bitwise(std::span<const std::uint8_t> data) {
  std::uint32_t crc = 0xFFFFFFFFu;
  for (const std::uint8_t byte : data) {
    crc ^= byte;
    for (int bit = 0; bit < 8; ++bit) {
      crc = (crc & 1u) ? (0xEDB88320u ^ (crc >> 1)) : (crc >> 1);
    }
  }
  return crc ^ 0xFFFFFFFFu;
}

inline double normal_pdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::acos(-1.0)));
}

// Composite Simpson integration of the normal density.
inline double normal_mass(double lo, double hi, double mean, double sd,
                          int intervals = 200'000) {
  const double h = (hi - lo) / intervals;
  double sum = normal_pdf(lo, mean, sd) + normal_pdf(hi, mean, sd);
  for (int i = 1; i < intervals; ++i) {
    sum += normal_pdf(lo + i * h, mean, sd) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

// P(X >= threshold + 0.5 | lo <= X <= hi) for X ~ Normal(mean, sd): the
// probability that a rounded in-range draw exceeds `threshold` as an integer.
inline double truncated_fraction_above(double threshold, double mean,
                                       double sd, double lo, double hi) {
  const double total = normal_mass(lo, hi, mean, sd);
  const double above = normal_mass(threshold + 0.5, hi, mean, sd);
  return above / total;
}

// Frozen oracle values, computed by the quadrature above (cross-checked with
// an erf-based evaluation to 1e-13) before the implementation was written.
// Defaults: Normal(5500, 1024) truncated to [1024, 10240].
inline constexpr double kFractionAbove4096 = 0.914756509059147;

// Standard CRC-32 check value and the bitwise CRC of a single zero byte.
inline constexpr std::uint32_t kCrcCheckValue = 0xCBF43926u;
inline constexpr std::uint32_t kCrcZeroByte = 0xD202EF8Du;

// First xoshiro256++ outputs after splitmix64 seeding, from an independent
// reference implementation.
inline constexpr std::uint64_t kXoshiroSeed0[5] = {
    0x53175d61490b23dfull, 0x61da6f3dc380d507ull, 0x5c0fdf91ec9a7bfcull,
    0x02eebf8c3bbe5e1aull, 0x7eca04ebaf4a5eeaull};
inline constexpr std::uint64_t kXoshiroSeed42[5] = {
    0xd0764d4f4476689full, 0x519e4174576f3791ull, 0xfbe07cfb0c24ed8cull,
    0xb37d9f600cd835b8ull, 0xcb231c3874846a73ull};

}  // namespace bffs::test

#pragma once

#include <cstdint>
#include <span>

namespace bffs {

/// CRC-32, reflected form of the IEEE 802.3 polynomial (0xEDB88320), init and
/// final XOR 0xFFFFFFFF. Same check value as zip/zlib: crc32("123456789") ==
/// 0xCBF43926.
std::uint32_t crc32(std::span<const std::uint8_t> data) noexcept;

/// Streaming update; start from crc32_init() and finish with crc32_final().
std::uint32_t crc32_init() noexcept;
std::uint32_t crc32_update(std::uint32_t state,
                           std::span<const std::uint8_t> data) noexcept;
std::uint32_t crc32_final(std::uint32_t state) noexcept;

}  // namespace bffs

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bffs/rng.hpp"

namespace bffs {

/// Every generated file ends with an 8-byte trailer: the CRC-32 of the
/// payload, zero-extended to 64 bits and stored little-endian. The on-disk
/// layout is `payload bytes ‖ trailer` and is a stable format: readers from
/// any build must be able to verify trees written by any other build.
inline constexpr std::size_t kTrailerBytes = 8;

/// printf-style patterns for directory and file names; each must contain
/// exactly one unsigned long long conversion. Fixed-width ordinals keep
/// lexical order equal to creation order (f0000, s0000, file0000000, ...).
struct NameTemplate {
  std::string folder = "f%04llu";
  std::string subfolder = "s%04llu";
  std::string file = "file%07llu";

  bool operator==(const NameTemplate&) const = default;
};

/// The folder/subfolder/file plan for one run. Enumeration order is fixed:
/// folders ascending, then subfolders, then files.
struct RunSchedule {
  std::uint64_t folders = 1;
  std::uint64_t subfolders_per_folder = 1;
  std::uint64_t files_per_subfolder = 1;
  std::uint64_t total_files = 1;
  std::string root_path;
  NameTemplate names;

  std::uint64_t directory_count() const noexcept {
    return folders * (1 + subfolders_per_folder);
  }

  std::string folder_name(std::uint64_t folder_idx) const;
  std::string subfolder_name(std::uint64_t subfolder_idx) const;
  std::string file_name(std::uint64_t file_idx) const;

  std::string folder_path(std::uint64_t folder_idx) const;
  std::string subfolder_path(std::uint64_t folder_idx,
                             std::uint64_t subfolder_idx) const;
  std::string file_path(std::uint64_t folder_idx, std::uint64_t subfolder_idx,
                        std::uint64_t file_idx) const;

  /// All file paths in creation order. Intended for tests and small trees;
  /// the runners walk the schedule without materializing it.
  std::vector<std::string> enumerate_file_paths() const;

  bool operator==(const RunSchedule&) const = default;
};

/// Validates counts (all >= 1, product must not overflow) and computes
/// total_files. Throws Error{invalid_schedule} or Error{overflow}.
RunSchedule plan_schedule(std::uint64_t folders, std::uint64_t subfolders,
                          std::uint64_t files_per_subfolder,
                          std::string root_path, NameTemplate names = {});

/// Truncated normal file-size law. Sizes are drawn from
/// Normal(mean, std_dev), rejected until inside [min, max], then rounded to
/// the nearest integer. The sampled size is the full on-disk size including
/// the 8-byte trailer.
struct FileSizeDistribution {
  std::uint64_t mean_bytes = 5500;
  std::uint64_t std_dev_bytes = 1024;
  std::uint64_t min_bytes = 1024;
  std::uint64_t max_bytes = 10240;
  std::uint64_t seed = 1;

  bool operator==(const FileSizeDistribution&) const = default;
};

/// Throws Error{invalid_distribution} unless
/// min <= mean <= max and min >= trailer size + 1.
void validate(const FileSizeDistribution& dist);

/// One standard-normal deviate per call. Polar Box-Muller; each accepted
/// (u, v) pair yields two deviates and both are consumed, so call order is
/// part of the deterministic stream.
class GaussianSource {
 public:
  double next(Rng& rng) noexcept;

 private:
  double cached_ = 0.0;
  bool has_cached_ = false;
};

class FileSizeSampler {
 public:
  /// Validates the distribution.
  explicit FileSizeSampler(FileSizeDistribution dist);

  /// Next size in [min_bytes, max_bytes]. Throws Error{distribution_error}
  /// if 10,000 consecutive draws fall outside the window.
  std::uint64_t next(Rng& rng);

  const FileSizeDistribution& dist() const noexcept { return dist_; }

 private:
  FileSizeDistribution dist_;
  GaussianSource gauss_;
};

/// size pseudo-random bytes; advances rng.
std::vector<std::uint8_t> generate_payload(std::size_t size, Rng& rng);

/// payload ‖ trailer, contiguous.
struct FramedFile {
  std::vector<std::uint8_t> bytes;

  std::size_t total_size() const noexcept { return bytes.size(); }
  std::size_t payload_size() const noexcept {
    return bytes.size() - kTrailerBytes;
  }
  std::span<const std::uint8_t> payload() const noexcept {
    return {bytes.data(), payload_size()};
  }
  std::uint64_t trailer_value() const noexcept;
};

/// Appends the 8-byte trailer to `payload` in place. The buffer-reuse path
/// used by the creator hot loop.
void frame_in_place(std::vector<std::uint8_t>& payload);

/// Copying form. Throws Error{invalid_payload} on an empty payload.
FramedFile encode_trailer(std::span<const std::uint8_t> payload);

enum class VerifyResult : std::uint8_t { pass, checksum_mismatch, too_short };

const char* to_string(VerifyResult r) noexcept;

/// pass iff file_bytes is at least payload(1) + trailer(8) long and the
/// trailer equals the recomputed CRC-32 of the leading bytes.
VerifyResult verify_frame(std::span<const std::uint8_t> file_bytes) noexcept;

}  // namespace bffs

#include "bffs/workload.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>

#include "bffs/crc32.hpp"
#include "bffs/error.hpp"

namespace bffs {
namespace {

std::string render_name(const std::string& pattern, std::uint64_t ordinal) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), pattern.c_str(),
                static_cast<unsigned long long>(ordinal));
  return buf;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorCode::overflow, "schedule file count overflows 64 bits");
  }
  return out;
}

}  // namespace

std::string RunSchedule::folder_name(std::uint64_t folder_idx) const {
  return render_name(names.folder, folder_idx);
}

std::string RunSchedule::subfolder_name(std::uint64_t subfolder_idx) const {
  return render_name(names.subfolder, subfolder_idx);
}

std::string RunSchedule::file_name(std::uint64_t file_idx) const {
  return render_name(names.file, file_idx);
}

std::string RunSchedule::folder_path(std::uint64_t folder_idx) const {
  return root_path + "/" + folder_name(folder_idx);
}

std::string RunSchedule::subfolder_path(std::uint64_t folder_idx,
                                        std::uint64_t subfolder_idx) const {
  return folder_path(folder_idx) + "/" + subfolder_name(subfolder_idx);
}

std::string RunSchedule::file_path(std::uint64_t folder_idx,
                                   std::uint64_t subfolder_idx,
                                   std::uint64_t file_idx) const {
  return subfolder_path(folder_idx, subfolder_idx) + "/" + file_name(file_idx);
}

std::vector<std::string> RunSchedule::enumerate_file_paths() const {
  std::vector<std::string> paths;
  paths.reserve(total_files);
  for (std::uint64_t f = 0; f < folders; ++f) {
    for (std::uint64_t s = 0; s < subfolders_per_folder; ++s) {
      const std::string dir = subfolder_path(f, s);
      for (std::uint64_t k = 0; k < files_per_subfolder; ++k) {
        paths.push_back(dir + "/" + file_name(k));
      }
    }
  }
  return paths;
}

RunSchedule plan_schedule(std::uint64_t folders, std::uint64_t subfolders,
                          std::uint64_t files_per_subfolder,
                          std::string root_path, NameTemplate names) {
  if (folders == 0 || subfolders == 0 || files_per_subfolder == 0) {
    throw Error(ErrorCode::invalid_schedule,
                "folder, subfolder and file counts must all be >= 1");
  }
  if (root_path.empty()) {
    throw Error(ErrorCode::invalid_schedule, "root path must not be empty");
  }
  while (root_path.size() > 1 && root_path.back() == '/') root_path.pop_back();

  RunSchedule schedule;
  schedule.folders = folders;
  schedule.subfolders_per_folder = subfolders;
  schedule.files_per_subfolder = files_per_subfolder;
  schedule.total_files =
      checked_mul(checked_mul(folders, subfolders), files_per_subfolder);
  schedule.root_path = std::move(root_path);
  schedule.names = std::move(names);
  return schedule;
}

void validate(const FileSizeDistribution& dist) {
  if (dist.min_bytes < kTrailerBytes + 1) {
    throw Error(ErrorCode::invalid_distribution,
                "min size must leave at least one payload byte beside the "
                "8-byte trailer");
  }
  if (!(dist.min_bytes <= dist.mean_bytes &&
        dist.mean_bytes <= dist.max_bytes)) {
    throw Error(ErrorCode::invalid_distribution,
                "size distribution requires min <= mean <= max");
  }
}

double GaussianSource::next(Rng& rng) noexcept {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  // Polar Box-Muller: draw (u, v) uniform on [-1, 1)^2 until inside the unit
  // circle, excluding the origin.
  double u, v, s;
  do {
    u = 2.0 * rng.next_unit() - 1.0;
    v = 2.0 * rng.next_unit() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  cached_ = v * factor;
  has_cached_ = true;
  return u * factor;
}

FileSizeSampler::FileSizeSampler(FileSizeDistribution dist) : dist_(dist) {
  validate(dist_);
}

std::uint64_t FileSizeSampler::next(Rng& rng) {
  const double mean = static_cast<double>(dist_.mean_bytes);
  const double sd = static_cast<double>(dist_.std_dev_bytes);
  const double lo = static_cast<double>(dist_.min_bytes);
  const double hi = static_cast<double>(dist_.max_bytes);
  // Out-of-range draws are rejected and resampled, not clamped, so no
  // probability mass piles up at the bounds.
  for (int attempt = 0; attempt < 10'000; ++attempt) {
    const double x = mean + sd * gauss_.next(rng);
    if (x >= lo && x <= hi) {
      return static_cast<std::uint64_t>(std::llround(x));
    }
  }
  throw Error(ErrorCode::distribution_error,
              "10,000 consecutive size draws fell outside [min, max]");
}

std::vector<std::uint8_t> generate_payload(std::size_t size, Rng& rng) {
  std::vector<std::uint8_t> payload(size);
  rng.fill_bytes(payload);
  return payload;
}

std::uint64_t FramedFile::trailer_value() const noexcept {
  std::uint64_t value = 0;
  for (std::size_t k = 0; k < kTrailerBytes; ++k) {
    value |= static_cast<std::uint64_t>(bytes[payload_size() + k]) << (8 * k);
  }
  return value;
}

void frame_in_place(std::vector<std::uint8_t>& payload) {
  // The trailer is the 32-bit CRC zero-extended to 64 bits, little-endian:
  // the 8-byte field readers extract, holding a standard CRC-32.
  const std::uint64_t crc = crc32(payload);
  const std::size_t offset = payload.size();
  payload.resize(offset + kTrailerBytes);
  for (std::size_t k = 0; k < kTrailerBytes; ++k) {
    payload[offset + k] = static_cast<std::uint8_t>((crc >> (8 * k)) & 0xFFu);
  }
}

FramedFile encode_trailer(std::span<const std::uint8_t> payload) {
  if (payload.empty()) {
    throw Error(ErrorCode::invalid_payload, "cannot frame an empty payload");
  }
  FramedFile file;
  file.bytes.assign(payload.begin(), payload.end());
  frame_in_place(file.bytes);
  return file;
}

const char* to_string(VerifyResult r) noexcept {
  switch (r) {
    case VerifyResult::pass:
      return "pass";
    case VerifyResult::checksum_mismatch:
      return "checksum-mismatch";
    case VerifyResult::too_short:
      return "too-short";
  }
  return "unknown";
}

VerifyResult verify_frame(std::span<const std::uint8_t> file_bytes) noexcept {
  if (file_bytes.size() < kTrailerBytes + 1) {
    return VerifyResult::too_short;
  }
  const std::size_t payload_size = file_bytes.size() - kTrailerBytes;
  std::uint64_t stored = 0;
  for (std::size_t k = 0; k < kTrailerBytes; ++k) {
    stored |= static_cast<std::uint64_t>(file_bytes[payload_size + k])
              << (8 * k);
  }
  const std::uint64_t computed = crc32(file_bytes.first(payload_size));
  return stored == computed ? VerifyResult::pass
                            : VerifyResult::checksum_mismatch;
}

}  // namespace bffs

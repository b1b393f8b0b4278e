#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bffs {

/// Free inodes/blocks/bytes of the target filesystem at one instant.
/// Before/after pairs of these form the storage-accounting block of a run.
struct StorageSnapshot {
  std::uint64_t inodes_free = 0;  // 0 when the backend does not report inodes
  std::uint64_t blocks_free = 0;
  std::uint64_t block_size = 0;
  std::uint64_t total_bytes = 0;
  std::uint64_t timestamp_us = 0;

  bool operator==(const StorageSnapshot&) const = default;
};

struct BackendCapabilities {
  bool reports_inodes = true;  // false for BtrFS-like targets
  std::uint64_t block_size = 4096;

  bool operator==(const BackendCapabilities&) const = default;
};

enum class OpStatus : std::uint8_t {
  ok,
  not_found,
  already_exists,
  permission_denied,
  no_space,
  io_error,
};

const char* to_string(OpStatus s) noexcept;

/// True for conditions that must abort the run rather than be counted.
inline bool is_fatal(OpStatus s) noexcept {
  return s == OpStatus::no_space || s == OpStatus::permission_denied;
}

struct DirResult {
  OpStatus status = OpStatus::ok;
  std::uint64_t elapsed_us = 0;
};

struct WriteResult {
  OpStatus status = OpStatus::ok;
  std::uint64_t create_us = 0;  // the create/open call alone
  std::uint64_t write_us = 0;   // data write + (optional sync) + close
};

struct ReadResult {
  OpStatus status = OpStatus::ok;
  std::uint64_t open_us = 0;  // the open call alone
  std::uint64_t read_us = 0;  // read loop; ends when the last byte is in memory
};

/// Uniform interface to the target storage. One run thread uses a backend at
/// a time; implementations may be handed between threads but need not accept
/// concurrent calls. All elapsed values come from a monotonic clock and are
/// reported in whole microseconds.
class FsBackend {
 public:
  virtual ~FsBackend() = default;

  virtual BackendCapabilities capabilities() const = 0;

  virtual DirResult create_directory(const std::string& path) = 0;

  /// Creates `path` (fails if it exists) and writes `content`. The create
  /// window covers only the create call; the write window covers data
  /// transfer through close, so every byte is accounted to exactly one phase.
  virtual WriteResult create_and_write_file(
      const std::string& path, std::span<const std::uint8_t> content) = 0;

  /// Read-phase folder search: time to open the directory before iterating
  /// its files.
  virtual DirResult open_directory(const std::string& path) = 0;

  /// Reads the whole file into `out` (cleared first). Buffer capacity is
  /// retained across calls so steady-state reads do not allocate.
  virtual ReadResult open_and_read_file(const std::string& path,
                                        std::vector<std::uint8_t>& out) = 0;

  virtual OpStatus storage_stats(StorageSnapshot& out) = 0;

  /// Identity timestamp (µs). Wall clock on real backends; the deterministic
  /// logical clock on the mock, so mock reports are byte-reproducible.
  virtual std::uint64_t wall_us() = 0;

  /// Monotonic run clock (µs) used for whole-run durations. Steady clock on
  /// real backends, logical clock on the mock.
  virtual std::uint64_t mono_us() = 0;
};

/// Measured cost of an empty start/stop timing interval, in nanoseconds.
/// Exposed as a diagnostic only; it is never subtracted from samples.
std::uint64_t measure_timer_overhead_ns();

}  // namespace bffs

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bffs/creator.hpp"
#include "bffs/fs_backend.hpp"
#include "bffs/metrics.hpp"
#include "bffs/workload.hpp"

namespace bffs {

struct ReadPhaseResult {
  std::uint64_t files_read = 0;
  std::uint64_t bytes_read = 0;               // TByR
  std::uint64_t blocks_read = 0;              // sum of ceil(size/block_size)
  std::uint64_t folder_search_total_us = 0;   // TFRT
  std::uint64_t file_open_total_us = 0;       // TFORT
  std::uint64_t file_read_total_us = 0;       // TfRT
  std::uint64_t checksum_failures = 0;
  std::uint64_t missing_files = 0;
  std::uint64_t errors = 0;
  std::uint64_t phase_wall_us = 0;
  std::vector<FolderSample> per_folder_series;
  bool aborted = false;
  std::string abort_reason;

  bool operator==(const ReadPhaseResult&) const = default;
};

struct ReadOptions : RunOptions {
  /// Issue a best-effort page-cache eviction hint for every scheduled file
  /// before the timed read phase starts. Recorded in the report; no claim is
  /// made that this is equivalent to a cold cache.
  bool drop_cache_first = false;
};

/// Read phase: walks the schedule in creation order, reads every file whole,
/// and verifies the trailer. The timed read window ends when the last byte is
/// in memory; CRC verification is application time, not read time. Missing
/// files and checksum mismatches are counted, never fatal: a measurement tool
/// reports discrepancies instead of failing fast. A missing directory skips
/// its files (all counted missing) and the run continues.
ReadPhaseResult run_read(const RunSchedule& schedule, FsBackend& backend,
                         RunMetrics& metrics, const ReadOptions& options = {});

}  // namespace bffs

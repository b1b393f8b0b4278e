#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bffs/fs_backend.hpp"
#include "bffs/metrics.hpp"
#include "bffs/workload.hpp"

namespace bffs {

/// Write-phase totals. Phase totals are sums of per-operation windows; the
/// wall clock of the whole phase (including untimed application work) is kept
/// separately so computation overhead stays derivable.
struct CreatePhaseResult {
  std::uint64_t files_written = 0;
  std::uint64_t bytes_written = 0;             // TByW
  std::uint64_t blocks_written = 0;            // sum of ceil(size/block_size)
  std::uint64_t folder_create_total_us = 0;    // TFWT: folders + subfolders
  std::uint64_t file_create_total_us = 0;      // TFCWT
  std::uint64_t file_write_total_us = 0;       // TfWT
  std::uint64_t errors = 0;
  std::uint64_t phase_wall_us = 0;
  std::vector<FolderSample> per_folder_series;  // trend, <= bucket count
  bool aborted = false;
  std::string abort_reason;

  bool operator==(const CreatePhaseResult&) const = default;
};

struct ProgressState {
  std::uint64_t folders_done = 0;
  std::uint64_t folders_total = 0;
  std::uint64_t files_done = 0;
  std::uint64_t files_total = 0;
  std::uint64_t elapsed_us = 0;
};

/// Single status line, e.g. "folders 50/100 files 500000/1000000 rate 63694 files/s".
std::string progress_line(const ProgressState& state);

struct RunOptions {
  /// Emit a progress line every N files (0 = off). Rendered off the timed
  /// path, to the diagnostic stream.
  std::uint64_t progress_every_files = 0;
  std::ostream* progress_out = nullptr;

  /// Log one raw-sample CSV line per N-th file (0 = off).
  std::uint64_t sample_log_every = 0;
  std::ostream* sample_log = nullptr;

  std::uint64_t trend_buckets = 20;

  /// Cooperative stop (signal handlers set it); checked between files.
  const std::atomic<bool>* stop = nullptr;
};

/// Write phase: builds the folder/subfolder tree and writes every framed
/// file in schedule order. Per-file create/write windows feed `metrics`
/// (tracker + histogram + per-folder aggregates); statistics collection
/// happens between timed operations and is excluded from every window.
///
/// Per-file write failures are counted and skipped; the run aborts only on
/// fatal conditions (no space, permissions) or a requested stop, returning
/// the partial result.
CreatePhaseResult run_create(const RunSchedule& schedule,
                             const FileSizeDistribution& dist,
                             FsBackend& backend, RunMetrics& metrics,
                             const RunOptions& options = {});

}  // namespace bffs

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bffs/fs_backend.hpp"
#include "bffs/workload.hpp"

namespace bffs {

/// Before/used/after storage accounting around a run. `bytes_used` is the
/// single source of truth for disk space consumed (DSU); derived metrics take
/// it from here. Deltas can be negative on real filesystems when unrelated
/// system activity frees space mid-run, so block/byte deltas are signed;
/// the inode delta is clamped at zero.
struct StorageDelta {
  StorageSnapshot before;
  StorageSnapshot after;
  std::uint64_t inodes_used = 0;
  std::int64_t blocks_used = 0;
  std::int64_t bytes_used = 0;

  bool operator==(const StorageDelta&) const = default;
};

/// Inodes a clean run should consume: one per file, per folder and per
/// subfolder. The root directory pre-exists and is not counted.
std::uint64_t expected_inodes(const RunSchedule& schedule);

/// Computes deltas from `before` to a pair of already-taken snapshots.
StorageDelta delta_between(const StorageSnapshot& before,
                           const StorageSnapshot& after);

/// Takes the after-snapshot now and computes deltas. Call immediately after
/// the last mutating operation returns. Throws Error{io_error} when the
/// backend cannot report stats.
StorageDelta capture_delta(FsBackend& backend, const StorageSnapshot& before);

/// Diagnostic for inode-reporting backends: a message when the measured inode
/// delta differs from expected_inodes(schedule), nullopt otherwise. Other
/// system activity can consume inodes on real targets, so this warns and
/// never fails a run.
std::optional<std::string> inode_mismatch_warning(const StorageDelta& delta,
                                                  const RunSchedule& schedule,
                                                  bool reports_inodes);

}  // namespace bffs

#include "bffs/storage_probe.hpp"

#include "bffs/error.hpp"

namespace bffs {

std::uint64_t expected_inodes(const RunSchedule& schedule) {
  return schedule.total_files + schedule.folders +
         schedule.folders * schedule.subfolders_per_folder;
}

StorageDelta delta_between(const StorageSnapshot& before,
                           const StorageSnapshot& after) {
  StorageDelta delta;
  delta.before = before;
  delta.after = after;
  delta.inodes_used = after.inodes_free < before.inodes_free
                          ? before.inodes_free - after.inodes_free
                          : 0;
  delta.blocks_used = static_cast<std::int64_t>(before.blocks_free) -
                      static_cast<std::int64_t>(after.blocks_free);
  delta.bytes_used =
      delta.blocks_used * static_cast<std::int64_t>(before.block_size);
  return delta;
}

StorageDelta capture_delta(FsBackend& backend, const StorageSnapshot& before) {
  StorageSnapshot after;
  if (backend.storage_stats(after) != OpStatus::ok) {
    throw Error(ErrorCode::io_error, "storage stats query failed");
  }
  return delta_between(before, after);
}

std::optional<std::string> inode_mismatch_warning(const StorageDelta& delta,
                                                  const RunSchedule& schedule,
                                                  bool reports_inodes) {
  if (!reports_inodes) return std::nullopt;
  const std::uint64_t expected = expected_inodes(schedule);
  if (delta.inodes_used == expected) return std::nullopt;
  return "inode delta " + std::to_string(delta.inodes_used) +
         " differs from the " + std::to_string(expected) +
         " the schedule accounts for; other system activity can consume "
         "inodes during a run";
}

}  // namespace bffs

#include "bffs/reader.hpp"

#include <cstdio>
#include <ostream>

namespace bffs {

ReadPhaseResult run_read(const RunSchedule& schedule, FsBackend& backend,
                         RunMetrics& metrics, const ReadOptions& options) {
  ReadPhaseResult result;
  const std::uint64_t block_size = backend.capabilities().block_size;
  const std::uint64_t phase_start = backend.mono_us();

  auto stop_requested = [&] {
    return options.stop != nullptr &&
           options.stop->load(std::memory_order_relaxed);
  };

  std::vector<std::uint8_t> buf;
  std::uint64_t files_visited = 0;
  const std::uint64_t files_per_folder =
      schedule.subfolders_per_folder * schedule.files_per_subfolder;

  for (std::uint64_t f = 0; f < schedule.folders && !result.aborted; ++f) {
    const DirResult folder = backend.open_directory(schedule.folder_path(f));
    result.folder_search_total_us += folder.elapsed_us;

    std::uint64_t folder_read_us = 0;
    std::uint64_t folder_files = 0;

    if (folder.status != OpStatus::ok) {
      result.missing_files += files_per_folder;
    } else {
      for (std::uint64_t s = 0;
           s < schedule.subfolders_per_folder && !result.aborted; ++s) {
        const std::string dir = schedule.subfolder_path(f, s);
        const DirResult sub = backend.open_directory(dir);
        result.folder_search_total_us += sub.elapsed_us;
        if (sub.status != OpStatus::ok) {
          result.missing_files += schedule.files_per_subfolder;
          continue;
        }

        for (std::uint64_t k = 0; k < schedule.files_per_subfolder; ++k) {
          if (stop_requested()) {
            result.aborted = true;
            result.abort_reason = "stop requested";
            break;
          }
          const std::string path = dir + "/" + schedule.file_name(k);
          const ReadResult rr = backend.open_and_read_file(path, buf);
          ++files_visited;
          if (rr.status == OpStatus::not_found) {
            ++result.missing_files;
            continue;
          }
          if (rr.status != OpStatus::ok) {
            ++result.errors;
            continue;
          }
          ++result.files_read;
          result.bytes_read += buf.size();
          result.blocks_read += (buf.size() + block_size - 1) / block_size;
          result.file_open_total_us += rr.open_us;
          result.file_read_total_us += rr.read_us;
          metrics.read_tracker.record(rr.read_us);
          metrics.read_hist.record(rr.read_us);
          folder_read_us += rr.read_us;
          ++folder_files;

          // Verification happens after the timed read window: checksum work
          // is application time, not I/O time.
          const VerifyResult verdict = verify_frame(buf);
          if (verdict != VerifyResult::pass) {
            ++result.checksum_failures;
          }
          if (options.sample_log != nullptr && options.sample_log_every != 0 &&
              files_visited % options.sample_log_every == 0) {
            char line[112];
            std::snprintf(line, sizeof(line), "%llu,%llu,%llu,%llu,%s\n",
                          static_cast<unsigned long long>(files_visited),
                          static_cast<unsigned long long>(buf.size()),
                          static_cast<unsigned long long>(rr.open_us),
                          static_cast<unsigned long long>(rr.read_us),
                          to_string(verdict));
            *options.sample_log << line;
          }
          if (options.progress_every_files != 0 &&
              options.progress_out != nullptr &&
              files_visited % options.progress_every_files == 0) {
            *options.progress_out
                << progress_line({f, schedule.folders, files_visited,
                                  schedule.total_files,
                                  backend.mono_us() - phase_start})
                << '\n';
          }
        }
      }
    }

    metrics.read_folders.push_back(
        {f + 1, Phase::read, folder_read_us, folder_files});
  }

  result.phase_wall_us = backend.mono_us() - phase_start;
  result.per_folder_series =
      trend_series(metrics.read_folders, options.trend_buckets);
  return result;
}

}  // namespace bffs

#include "bffs/creator.hpp"

#include <cstdio>
#include <ostream>

#include "bffs/error.hpp"

namespace bffs {

std::string progress_line(const ProgressState& state) {
  const std::uint64_t rate =
      state.elapsed_us == 0
          ? 0
          : state.files_done * 1'000'000ull / state.elapsed_us;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%llu/%llu folders  %llu/%llu files  %llu files/s",
                static_cast<unsigned long long>(state.folders_done),
                static_cast<unsigned long long>(state.folders_total),
                static_cast<unsigned long long>(state.files_done),
                static_cast<unsigned long long>(state.files_total),
                static_cast<unsigned long long>(rate));
  return buf;
}

CreatePhaseResult run_create(const RunSchedule& schedule,
                             const FileSizeDistribution& dist,
                             FsBackend& backend, RunMetrics& metrics,
                             const RunOptions& options) {
  CreatePhaseResult result;
  FileSizeSampler sampler(dist);
  Rng rng(dist.seed);
  const std::uint64_t block_size = backend.capabilities().block_size;
  const std::uint64_t phase_start = backend.mono_us();

  auto abort_run = [&](const std::string& reason) {
    result.aborted = true;
    result.abort_reason = reason;
  };
  auto stop_requested = [&] {
    return options.stop != nullptr &&
           options.stop->load(std::memory_order_relaxed);
  };
  auto emit_progress = [&](std::uint64_t folders_done,
                           std::uint64_t files_done) {
    if (options.progress_out == nullptr) return;
    *options.progress_out << progress_line(
                                 {folders_done, schedule.folders, files_done,
                                  schedule.total_files,
                                  backend.mono_us() - phase_start})
                          << '\n';
  };

  std::vector<std::uint8_t> buf;
  std::uint64_t files_done = 0;

  for (std::uint64_t f = 0; f < schedule.folders && !result.aborted; ++f) {
    // Any failure to build the tree itself aborts: files cannot land in a
    // directory that does not exist.
    const DirResult folder = backend.create_directory(schedule.folder_path(f));
    result.folder_create_total_us += folder.elapsed_us;
    if (folder.status != OpStatus::ok) {
      abort_run("creating folder " + schedule.folder_path(f) + ": " +
                to_string(folder.status));
      break;
    }

    std::uint64_t folder_write_us = 0;
    std::uint64_t folder_files = 0;

    for (std::uint64_t s = 0;
         s < schedule.subfolders_per_folder && !result.aborted; ++s) {
      const std::string dir = schedule.subfolder_path(f, s);
      const DirResult sub = backend.create_directory(dir);
      result.folder_create_total_us += sub.elapsed_us;
      if (sub.status != OpStatus::ok) {
        abort_run("creating subfolder " + dir + ": " + to_string(sub.status));
        break;
      }

      for (std::uint64_t k = 0; k < schedule.files_per_subfolder; ++k) {
        if (stop_requested()) {
          abort_run("stop requested");
          break;
        }
        const std::uint64_t size = sampler.next(rng);
        buf.resize(size - kTrailerBytes);
        rng.fill_bytes(buf);
        frame_in_place(buf);

        const std::string path = dir + "/" + schedule.file_name(k);
        const WriteResult wr = backend.create_and_write_file(path, buf);
        ++files_done;
        if (wr.status == OpStatus::ok) {
          ++result.files_written;
          result.bytes_written += size;
          result.blocks_written += (size + block_size - 1) / block_size;
          result.file_create_total_us += wr.create_us;
          result.file_write_total_us += wr.write_us;
          metrics.write_tracker.record(wr.write_us);
          metrics.write_hist.record(wr.write_us);
          folder_write_us += wr.write_us;
          ++folder_files;
          if (options.sample_log != nullptr && options.sample_log_every != 0 &&
              files_done % options.sample_log_every == 0) {
            char line[96];
            std::snprintf(line, sizeof(line), "%llu,%llu,%llu,%llu\n",
                          static_cast<unsigned long long>(files_done),
                          static_cast<unsigned long long>(size),
                          static_cast<unsigned long long>(wr.create_us),
                          static_cast<unsigned long long>(wr.write_us));
            *options.sample_log << line;
          }
        } else if (is_fatal(wr.status)) {
          abort_run("writing " + path + ": " + to_string(wr.status));
          break;
        } else {
          // Skipped and counted; a failed operation contributes no time to
          // the phase totals so tracker sums stay equal to TfWT.
          ++result.errors;
        }
        if (options.progress_every_files != 0 &&
            files_done % options.progress_every_files == 0) {
          emit_progress(f, files_done);
        }
      }
    }

    metrics.write_folders.push_back(
        {f + 1, Phase::write, folder_write_us, folder_files});
    if (options.progress_every_files != 0) emit_progress(f + 1, files_done);
  }

  result.phase_wall_us = backend.mono_us() - phase_start;
  result.per_folder_series =
      trend_series(metrics.write_folders, options.trend_buckets);
  return result;
}

}  // namespace bffs

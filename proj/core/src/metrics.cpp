#include "bffs/metrics.hpp"

#include <algorithm>

#include "bffs/derived.hpp"
#include "bffs/error.hpp"

namespace bffs {

LatencyHistogram::LatencyHistogram(std::vector<std::uint64_t> edges)
    : edges_(std::move(edges)) {
  if (edges_.size() < 2 || !std::is_sorted(edges_.begin(), edges_.end()) ||
      std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw Error(ErrorCode::invalid_histogram,
                "histogram edges must be strictly ascending, >= 2 of them");
  }
  counts_.assign(edges_.size() - 1, 0);
}

void LatencyHistogram::record(std::uint64_t sample_us) noexcept {
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), sample_us);
  if (it == edges_.begin()) {
    ++underflow_;
  } else if (it == edges_.end()) {
    ++overflow_;
  } else {
    ++counts_[static_cast<std::size_t>(it - edges_.begin()) - 1];
  }
}

std::uint64_t LatencyHistogram::total() const noexcept {
  std::uint64_t sum = underflow_ + overflow_;
  for (const auto c : counts_) sum += c;
  return sum;
}

std::vector<std::uint64_t> LatencyHistogram::default_edges() {
  return {0,   5,   10,  15,   20,     25,      30,       40,      50,
          75,  100, 250, 500,  1000,   10'000,  100'000,  1'000'000,
          10'000'000};
}

LatencyHistogram LatencyHistogram::restore(std::vector<std::uint64_t> edges,
                                           std::vector<std::uint64_t> counts,
                                           std::uint64_t underflow,
                                           std::uint64_t overflow) {
  LatencyHistogram hist(std::move(edges));
  if (counts.size() != hist.edges_.size() - 1) {
    throw Error(ErrorCode::invalid_histogram,
                "histogram counts do not match bucket count");
  }
  hist.counts_ = std::move(counts);
  hist.underflow_ = underflow;
  hist.overflow_ = overflow;
  return hist;
}

const char* to_string(Phase p) noexcept {
  return p == Phase::write ? "write" : "read";
}

std::vector<FolderSample> trend_series(std::span<const FolderSample> folders,
                                       std::uint64_t bucket_count) {
  std::vector<FolderSample> out;
  if (folders.empty() || bucket_count == 0) return out;
  const std::uint64_t n = folders.size();
  const std::uint64_t stride = (n + bucket_count - 1) / bucket_count;
  out.reserve(std::min<std::uint64_t>(n, bucket_count));
  for (std::uint64_t i = 0; i < n; i += stride) {
    out.push_back(folders[i]);
  }
  return out;
}

namespace {

double ratio(std::uint64_t num, std::uint64_t den) noexcept {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

// Whole units per millisecond, floored; 0 when the phase has no elapsed time.
std::uint64_t per_ms(std::uint64_t count, std::uint64_t total_us) noexcept {
  return total_us == 0 ? 0 : count * 1000 / total_us;
}

}  // namespace

DerivedMetrics compute_derived(const CreatePhaseResult& create,
                               const ReadPhaseResult& read,
                               const StorageDelta& storage,
                               std::uint64_t block_size,
                               std::uint64_t wall_clock_total_us) {
  DerivedMetrics m;
  m.tbyw_bytes = create.bytes_written;
  m.tbyr_bytes = read.bytes_read;
  m.dsu_bytes = storage.bytes_used;
  m.tbkw_blocks =
      block_size == 0 ? 0 : storage.bytes_used / static_cast<std::int64_t>(block_size);
  m.tbkr_blocks = read.blocks_read;
  m.inodes_used = storage.inodes_used;
  m.twt_us = create.folder_create_total_us + create.file_write_total_us;
  m.tread_us = read.folder_search_total_us + read.file_read_total_us;
  m.trt_run_us = wall_clock_total_us;

  m.wth_bytes_per_us = ratio(create.bytes_written, create.file_write_total_us);
  m.rth_bytes_per_us = ratio(read.bytes_read, read.file_read_total_us);
  m.fws_files_per_ms = per_ms(create.files_written, create.file_write_total_us);
  m.frs_files_per_ms = per_ms(read.files_read, read.file_read_total_us);
  m.bkws_blocks_per_ms =
      m.tbkw_blocks <= 0
          ? 0
          : per_ms(static_cast<std::uint64_t>(m.tbkw_blocks),
                   create.file_write_total_us);
  m.bkrs_blocks_per_ms = per_ms(read.blocks_read, read.file_read_total_us);
  m.fcwt_us = ratio(create.file_create_total_us, create.files_written);
  m.fort_us = ratio(read.file_open_total_us, read.files_read);

  if (storage.bytes_used != 0) {
    m.dsuo_pct = (static_cast<double>(storage.bytes_used) -
                  static_cast<double>(create.bytes_written)) /
                 static_cast<double>(storage.bytes_used) * 100.0;
  }
  if (wall_clock_total_us != 0) {
    const double timed =
        static_cast<double>(m.twt_us) + static_cast<double>(create.file_create_total_us) +
        static_cast<double>(m.tread_us) + static_cast<double>(read.file_open_total_us);
    m.cpuo_pct = (static_cast<double>(wall_clock_total_us) - timed) /
                 static_cast<double>(wall_clock_total_us) * 100.0;
  }
  return m;
}

std::vector<std::string> metrics_warnings(const CreatePhaseResult& create,
                                          const ReadPhaseResult& read,
                                          const StorageDelta& storage) {
  std::vector<std::string> warnings;
  if (create.files_written > 0 && create.file_write_total_us == 0) {
    warnings.push_back(
        "inconsistent metrics: files were written but TfWT is zero; "
        "write-throughput cells are reported as 0");
  }
  if (create.files_written > 0 && storage.bytes_used == 0) {
    warnings.push_back(
        "inconsistent metrics: files were written but the storage delta is "
        "zero; DSU/DSUO cells are reported as 0");
  }
  if (create.files_written > 0 && storage.bytes_used < 0) {
    warnings.push_back(
        "storage delta is negative: other system activity freed more space "
        "than the run consumed");
  }
  if (read.files_read > 0 && read.file_read_total_us == 0) {
    warnings.push_back(
        "inconsistent metrics: files were read but TfRT is zero; "
        "read-throughput cells are reported as 0");
  }
  return warnings;
}

}  // namespace bffs

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bffs {

/// Streaming min/ave/max. Updates commute, so partial trackers can be merged.
struct LatencyTracker {
  std::uint64_t count = 0;
  std::uint64_t sum_us = 0;
  std::uint64_t min_us = 0;
  std::uint64_t max_us = 0;

  void record(std::uint64_t sample_us) noexcept {
    if (count == 0 || sample_us < min_us) min_us = sample_us;
    if (count == 0 || sample_us > max_us) max_us = sample_us;
    sum_us += sample_us;
    ++count;
  }

  double average_us() const noexcept {
    return count == 0 ? 0.0 : static_cast<double>(sum_us) / static_cast<double>(count);
  }

  bool operator==(const LatencyTracker&) const = default;
};

/// Fixed-bucket latency histogram. Bucket i covers [edges[i], edges[i+1]);
/// samples below the first edge go to underflow, samples at or above the last
/// edge go to overflow. Mass is conserved: sum(counts) + underflow + overflow
/// equals the number of samples recorded.
class LatencyHistogram {
 public:
  /// Default edges cover the observed 4µs–30.7s latency span of small-file
  /// workloads on local filesystems.
  LatencyHistogram() : LatencyHistogram(default_edges()) {}

  /// Throws Error{invalid_histogram} unless edges are strictly ascending and
  /// there are at least two.
  explicit LatencyHistogram(std::vector<std::uint64_t> edges);

  void record(std::uint64_t sample_us) noexcept;

  const std::vector<std::uint64_t>& edges() const noexcept { return edges_; }
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
  std::uint64_t underflow() const noexcept { return underflow_; }
  std::uint64_t overflow() const noexcept { return overflow_; }
  std::uint64_t total() const noexcept;

  static std::vector<std::uint64_t> default_edges();

  /// For deserialization: restores a histogram with explicit counts.
  static LatencyHistogram restore(std::vector<std::uint64_t> edges,
                                  std::vector<std::uint64_t> counts,
                                  std::uint64_t underflow,
                                  std::uint64_t overflow);

  bool operator==(const LatencyHistogram&) const = default;

 private:
  std::vector<std::uint64_t> edges_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t underflow_ = 0;
  std::uint64_t overflow_ = 0;
};

enum class Phase : std::uint8_t { write, read };

const char* to_string(Phase p) noexcept;

/// Aggregate of one top-level folder's per-file data phase.
struct FolderSample {
  std::uint64_t folder_ordinal = 0;  // 1-based
  Phase phase = Phase::write;
  std::uint64_t total_us = 0;
  std::uint64_t files = 0;

  double throughput_files_per_s() const noexcept {
    return total_us == 0 ? 0.0
                         : static_cast<double>(files) * 1e6 /
                               static_cast<double>(total_us);
  }

  bool operator==(const FolderSample&) const = default;
};

/// Raw timing captures of one run. Owned by the run thread; report code reads
/// it only after the phases complete.
struct RunMetrics {
  LatencyTracker write_tracker;
  LatencyTracker read_tracker;
  LatencyHistogram write_hist;
  LatencyHistogram read_hist;
  // One aggregate per top-level folder, in creation order.
  std::vector<FolderSample> write_folders;
  std::vector<FolderSample> read_folders;

  RunMetrics() = default;
  explicit RunMetrics(std::vector<std::uint64_t> hist_edges)
      : write_hist(hist_edges), read_hist(std::move(hist_edges)) {}
};

/// Evenly spaced selection of at most `bucket_count` folder aggregates.
/// Stride is ceil(folders / bucket_count); the first folder is always
/// included. With 100 folders and 20 buckets this samples ordinals
/// 1, 6, 11, ..., 96 — every 5th folder.
std::vector<FolderSample> trend_series(std::span<const FolderSample> folders,
                                       std::uint64_t bucket_count = 20);

}  // namespace bffs

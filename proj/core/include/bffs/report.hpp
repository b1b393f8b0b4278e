#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "bffs/creator.hpp"
#include "bffs/derived.hpp"
#include "bffs/metrics.hpp"
#include "bffs/reader.hpp"
#include "bffs/storage_probe.hpp"
#include "bffs/workload.hpp"

namespace bffs {

struct RunIdentity {
  std::string label;
  std::string backend_kind;  // "real" | "mock"
  std::uint64_t run_start_us = 0;
  std::uint64_t run_end_us = 0;
  BackendCapabilities capabilities;
  /// Effective configuration (defaults merged with config file and flags),
  /// embedded for reproducibility.
  std::map<std::string, std::string> config;
  std::uint64_t timer_overhead_ns = 0;  // diagnostic, never subtracted
  bool cache_drop_requested = false;
  bool durability_sync = false;

  bool operator==(const RunIdentity&) const = default;
};

/// Complete archive of one run. JSON is the canonical format; the text table
/// and plot CSVs are lossy projections of it.
struct RunReport {
  static constexpr int kSchemaVersion = 1;

  RunIdentity identity;
  RunSchedule schedule;
  FileSizeDistribution distribution;
  bool has_write = false;
  bool has_read = false;
  bool incomplete = false;
  CreatePhaseResult write;
  ReadPhaseResult read;
  LatencyTracker write_tracker;
  LatencyTracker read_tracker;
  LatencyHistogram write_hist;
  LatencyHistogram read_hist;
  StorageDelta storage;
  DerivedMetrics derived;

  bool operator==(const RunReport&) const = default;
};

/// Canonical serialization: sorted keys, fixed number formatting, every
/// numeric key carrying its unit as a suffix. Two equal reports serialize to
/// byte-identical strings.
std::string serialize_json(const RunReport& report);

/// Inverse of serialize_json. Throws Error{parse_error} on malformed input
/// or an unsupported schema version.
RunReport parse_json(const std::string& text);

/// Writes serialize_json(report) via a temp file + rename; on failure the
/// partial file is removed and Error{io_error} is thrown.
void emit_json(const RunReport& report, const std::string& path);

/// Human-readable tables: a write row and a read row in the source column
/// order, plus the storage before/used/after block. Totals print in seconds,
/// per-file times in µs, byte totals in GB (1 GB = 10^9 bytes).
std::string emit_table(const RunReport& report);

/// Plot-ready CSVs in out_dir: hist_write.csv, hist_read.csv,
/// trend_write.csv, trend_read.csv. Throws Error{io_error} on I/O failure.
void emit_plotdata(const RunReport& report, const std::string& out_dir);

}  // namespace bffs

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bffs/creator.hpp"
#include "bffs/reader.hpp"
#include "bffs/storage_probe.hpp"

namespace bffs {

/// Every derived cell of the write/read metric tables.
///
/// Units are part of the field names. Rates (fws/frs/bkws/bkrs) are whole
/// files or blocks per *millisecond* (equivalently thousands per second),
/// floored — the magnitude the source tables print. TBkW is the block count
/// actually consumed (DSU / block_size); TBkR is the logical count of blocks
/// transferred on read (sum of ceil(size/block_size)); the two differ by
/// design since reads consume no space.
struct DerivedMetrics {
  double wth_bytes_per_us = 0;  // TByW / TfWT
  double rth_bytes_per_us = 0;  // TByR / TfRT
  std::uint64_t fws_files_per_ms = 0;
  std::uint64_t frs_files_per_ms = 0;
  std::uint64_t bkws_blocks_per_ms = 0;
  std::uint64_t bkrs_blocks_per_ms = 0;
  double fcwt_us = 0;  // TFCWT / files_written
  double fort_us = 0;  // TFORT / files_read
  std::uint64_t tbyw_bytes = 0;
  std::uint64_t tbyr_bytes = 0;
  std::int64_t tbkw_blocks = 0;
  std::uint64_t tbkr_blocks = 0;
  std::int64_t dsu_bytes = 0;
  double dsuo_pct = 0;  // (DSU - TByW) / DSU * 100
  double cpuo_pct = 0;  // (TRT_run - (TWT + TFCWT + TRead + TFORT)) / TRT_run * 100
  std::uint64_t inodes_used = 0;
  std::uint64_t twt_us = 0;    // TFWT + TfWT
  std::uint64_t tread_us = 0;  // TFRT + TfRT
  std::uint64_t trt_run_us = 0;

  bool operator==(const DerivedMetrics&) const = default;
};

/// Pure function of the phase results, storage delta and whole-run wall
/// clock; identical inputs give bit-identical outputs. Total by convention:
/// any quotient with a zero denominator is 0, so empty runs and zero-latency
/// mock runs produce all-zero cells instead of failing.
DerivedMetrics compute_derived(const CreatePhaseResult& create,
                               const ReadPhaseResult& read,
                               const StorageDelta& storage,
                               std::uint64_t block_size,
                               std::uint64_t wall_clock_total_us);

/// Consistency diagnostics the strict formulas would otherwise hide: zero
/// TfWT or zero DSU on a run that wrote files, and similar impossible-on-real
/// combinations. Surfaced as warnings so fixture replays and synthetic mock
/// models still produce reports.
std::vector<std::string> metrics_warnings(const CreatePhaseResult& create,
                                          const ReadPhaseResult& read,
                                          const StorageDelta& storage);

}  // namespace bffs

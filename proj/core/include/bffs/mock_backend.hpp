#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "bffs/fs_backend.hpp"
#include "bffs/rng.hpp"

namespace bffs {

/// Latency model of the mock backend. Each operation costs a fixed base plus
/// a per-block component; the data phases can add a uniform integer jitter in
/// [lo, hi) µs drawn from the backend's own seeded stream. All costs are
/// deterministic for a given (model, seed, operation sequence).
struct MockLatencyModel {
  std::uint64_t dir_create_us = 10;
  std::uint64_t dir_open_us = 3;
  std::uint64_t file_create_us = 25;
  std::uint64_t write_per_block_us = 10;
  std::uint64_t file_open_us = 2;
  std::uint64_t read_per_block_us = 5;
  std::uint64_t write_jitter_lo_us = 0;
  std::uint64_t write_jitter_hi_us = 0;
  std::uint64_t read_jitter_lo_us = 0;
  std::uint64_t read_jitter_hi_us = 0;

  bool operator==(const MockLatencyModel&) const = default;
};

struct MockGeometry {
  std::uint64_t block_size = 4096;
  std::uint64_t total_blocks = 1ull << 31;  // 8 TiB of 4K blocks
  std::uint64_t total_inodes = 1'200'000'000;
  bool reports_inodes = true;

  bool operator==(const MockGeometry&) const = default;
};

/// Deterministic in-memory filesystem used as the test oracle.
///
/// Block accounting model: a live file consumes ceil(size / block_size)
/// blocks, every directory created through the interface consumes one block
/// and one inode, every file one inode. The root directory exists from the
/// start and consumes nothing. The logical clock advances by each operation's
/// modeled latency (also on failures), so snapshots and report timestamps are
/// reproducible run to run.
class MockBackend final : public FsBackend {
 public:
  explicit MockBackend(std::string root_path, MockGeometry geometry = {},
                       MockLatencyModel model = {}, std::uint64_t seed = 1);

  BackendCapabilities capabilities() const override;
  DirResult create_directory(const std::string& path) override;
  WriteResult create_and_write_file(
      const std::string& path, std::span<const std::uint8_t> content) override;
  DirResult open_directory(const std::string& path) override;
  ReadResult open_and_read_file(const std::string& path,
                                std::vector<std::uint8_t>& out) override;
  OpStatus storage_stats(StorageSnapshot& out) override;
  std::uint64_t wall_us() override { return clock_us_; }
  std::uint64_t mono_us() override { return clock_us_; }

  // Introspection and fault injection for tests.
  std::uint64_t file_count() const noexcept { return files_.size(); }
  std::uint64_t directory_count() const noexcept { return dirs_.size() - 1; }
  std::uint64_t clock_us() const noexcept { return clock_us_; }
  bool file_exists(const std::string& path) const;
  bool remove_file(const std::string& path);
  bool flip_bit(const std::string& path, std::uint64_t bit_index);
  /// Makes the nth (1-based) create_and_write_file call fail with io_error.
  void fail_write_at(std::uint64_t nth) { fail_write_at_ = nth; }

 private:
  std::uint64_t blocks_of(std::uint64_t bytes) const noexcept;
  std::uint64_t advance(std::uint64_t us) noexcept;
  std::uint64_t jitter(std::uint64_t lo, std::uint64_t hi) noexcept;
  bool parent_exists(const std::string& path) const;

  std::string root_;
  MockGeometry geo_;
  MockLatencyModel model_;
  Rng rng_;
  std::uint64_t clock_us_ = 0;
  std::uint64_t blocks_used_ = 0;
  std::uint64_t inodes_used_ = 0;
  std::uint64_t write_ops_ = 0;
  std::uint64_t fail_write_at_ = 0;
  std::unordered_set<std::string> dirs_;
  std::unordered_map<std::string, std::vector<std::uint8_t>> files_;
};

}  // namespace bffs

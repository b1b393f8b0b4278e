#pragma once

#include <cstdint>
#include <string>

#include "bffs/fs_backend.hpp"

namespace bffs {

struct RealBackendOptions {
  /// fsync every written file before close. Off by default: the harness
  /// measures the OS write-cache path unless told otherwise.
  bool durability_sync = false;
};

/// POSIX filesystem backend. Targets any mounted directory; storage stats
/// come from statvfs on the filesystem containing the root. Every file is
/// closed before the next is opened (steady-state open FD count is 1).
class RealBackend final : public FsBackend {
 public:
  explicit RealBackend(std::string root_path, RealBackendOptions opts = {});

  BackendCapabilities capabilities() const override;
  DirResult create_directory(const std::string& path) override;
  WriteResult create_and_write_file(
      const std::string& path, std::span<const std::uint8_t> content) override;
  DirResult open_directory(const std::string& path) override;
  ReadResult open_and_read_file(const std::string& path,
                                std::vector<std::uint8_t>& out) override;
  OpStatus storage_stats(StorageSnapshot& out) override;
  std::uint64_t wall_us() override;
  std::uint64_t mono_us() override;

  const std::string& root() const noexcept { return root_; }

  /// Best-effort page-cache eviction hint for one file (posix_fadvise).
  /// Used by the optional pre-read cache drop; no equivalence to a full
  /// system cache drop is claimed.
  bool drop_cache_hint(const std::string& path);

 private:
  std::string root_;
  RealBackendOptions opts_;
  BackendCapabilities caps_;
};

}  // namespace bffs

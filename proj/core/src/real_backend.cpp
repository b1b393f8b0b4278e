#include "bffs/real_backend.hpp"

#include <dirent.h>
#include <fcntl.h>
#include <sys/stat.h>
#include <sys/statvfs.h>
#include <time.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>

#include "bffs/error.hpp"

namespace bffs {
namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_us(Clock::time_point t0, Clock::time_point t1) noexcept {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count());
}

OpStatus map_errno(int err) noexcept {
  switch (err) {
    case ENOENT:
    case ENOTDIR:
      return OpStatus::not_found;
    case EEXIST:
      return OpStatus::already_exists;
    case EACCES:
    case EPERM:
    case EROFS:
      return OpStatus::permission_denied;
    case ENOSPC:
    case EDQUOT:
      return OpStatus::no_space;
    default:
      return OpStatus::io_error;
  }
}

}  // namespace

const char* to_string(OpStatus s) noexcept {
  switch (s) {
    case OpStatus::ok:
      return "ok";
    case OpStatus::not_found:
      return "not-found";
    case OpStatus::already_exists:
      return "already-exists";
    case OpStatus::permission_denied:
      return "permission-denied";
    case OpStatus::no_space:
      return "no-space";
    case OpStatus::io_error:
      return "io-error";
  }
  return "unknown";
}

std::uint64_t measure_timer_overhead_ns() {
  constexpr int kSamples = 1001;
  std::uint64_t samples[kSamples];
  for (int i = 0; i < kSamples; ++i) {
    const auto t0 = Clock::now();
    const auto t1 = Clock::now();
    samples[i] = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
  }
  std::nth_element(samples, samples + kSamples / 2, samples + kSamples);
  return samples[kSamples / 2];
}

RealBackend::RealBackend(std::string root_path, RealBackendOptions opts)
    : root_(std::move(root_path)), opts_(opts) {
  while (root_.size() > 1 && root_.back() == '/') root_.pop_back();
  struct statvfs vfs{};
  if (::statvfs(root_.c_str(), &vfs) != 0) {
    throw Error(ErrorCode::io_error,
                "statvfs failed for root '" + root_ + "'");
  }
  caps_.block_size = vfs.f_frsize != 0 ? vfs.f_frsize : vfs.f_bsize;
  // BtrFS-like targets expose no inode counts (f_files == 0).
  caps_.reports_inodes = vfs.f_files != 0;
}

BackendCapabilities RealBackend::capabilities() const { return caps_; }

DirResult RealBackend::create_directory(const std::string& path) {
  const auto t0 = Clock::now();
  const int rc = ::mkdir(path.c_str(), 0755);
  const auto t1 = Clock::now();
  return {rc == 0 ? OpStatus::ok : map_errno(errno), elapsed_us(t0, t1)};
}

WriteResult RealBackend::create_and_write_file(
    const std::string& path, std::span<const std::uint8_t> content) {
  const auto t0 = Clock::now();
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_EXCL, 0644);
  const auto t1 = Clock::now();
  if (fd < 0) {
    return {map_errno(errno), elapsed_us(t0, t1), 0};
  }

  OpStatus status = OpStatus::ok;
  const auto t2 = Clock::now();
  std::size_t off = 0;
  while (off < content.size()) {
    const ssize_t n =
        ::write(fd, content.data() + off, content.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      status = map_errno(errno);
      break;
    }
    off += static_cast<std::size_t>(n);
  }
  if (status == OpStatus::ok && opts_.durability_sync && ::fsync(fd) != 0) {
    status = map_errno(errno);
  }
  if (::close(fd) != 0 && status == OpStatus::ok) {
    status = map_errno(errno);
  }
  const auto t3 = Clock::now();
  return {status, elapsed_us(t0, t1), elapsed_us(t2, t3)};
}

DirResult RealBackend::open_directory(const std::string& path) {
  const auto t0 = Clock::now();
  DIR* dir = ::opendir(path.c_str());
  const auto t1 = Clock::now();
  if (dir == nullptr) {
    return {map_errno(errno), elapsed_us(t0, t1)};
  }
  ::closedir(dir);  // outside the search window
  return {OpStatus::ok, elapsed_us(t0, t1)};
}

ReadResult RealBackend::open_and_read_file(const std::string& path,
                                           std::vector<std::uint8_t>& out) {
  const auto t0 = Clock::now();
  const int fd = ::open(path.c_str(), O_RDONLY);
  const auto t1 = Clock::now();
  if (fd < 0) {
    out.clear();
    return {map_errno(errno), elapsed_us(t0, t1), 0};
  }

  // Size the buffer from the reported size, between the open and read
  // windows. One extra byte so a well-sized file still hits the zero-byte
  // read that marks end-of-file without growing mid-loop.
  struct stat st{};
  std::size_t hint = 65536;
  if (::fstat(fd, &st) == 0 && st.st_size > 0) {
    hint = static_cast<std::size_t>(st.st_size);
  }
  out.resize(hint + 1);

  OpStatus status = OpStatus::ok;
  std::size_t off = 0;
  const auto t2 = Clock::now();
  for (;;) {
    if (off == out.size()) {
      out.resize(out.size() * 2);  // file grew past the stat hint
    }
    const ssize_t n = ::read(fd, out.data() + off, out.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      status = map_errno(errno);
      break;
    }
    if (n == 0) break;
    off += static_cast<std::size_t>(n);
  }
  const auto t3 = Clock::now();
  ::close(fd);
  out.resize(off);
  return {status, elapsed_us(t0, t1), elapsed_us(t2, t3)};
}

OpStatus RealBackend::storage_stats(StorageSnapshot& out) {
  struct statvfs vfs{};
  if (::statvfs(root_.c_str(), &vfs) != 0) {
    return map_errno(errno);
  }
  const std::uint64_t frsize = vfs.f_frsize != 0 ? vfs.f_frsize : vfs.f_bsize;
  out.inodes_free = vfs.f_files != 0 ? vfs.f_ffree : 0;
  out.blocks_free = vfs.f_bfree;
  out.block_size = frsize;
  out.total_bytes = vfs.f_blocks * frsize;
  out.timestamp_us = wall_us();
  return OpStatus::ok;
}

std::uint64_t RealBackend::wall_us() {
  struct timespec ts{};
  ::clock_gettime(CLOCK_REALTIME, &ts);
  return static_cast<std::uint64_t>(ts.tv_sec) * 1'000'000ull +
         static_cast<std::uint64_t>(ts.tv_nsec) / 1000;
}

std::uint64_t RealBackend::mono_us() {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::microseconds>(
          Clock::now().time_since_epoch())
          .count());
}

bool RealBackend::drop_cache_hint(const std::string& path) {
  const int fd = ::open(path.c_str(), O_RDONLY);
  if (fd < 0) return false;
  const int rc = ::posix_fadvise(fd, 0, 0, POSIX_FADV_DONTNEED);
  ::close(fd);
  return rc == 0;
}

}  // namespace bffs

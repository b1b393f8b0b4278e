#include "bffs/mock_backend.hpp"

namespace bffs {
namespace {

std::string parent_of(const std::string& path) {
  const auto pos = path.find_last_of('/');
  if (pos == std::string::npos) return {};
  if (pos == 0) return "/";
  return path.substr(0, pos);
}

std::string normalized(std::string path) {
  while (path.size() > 1 && path.back() == '/') path.pop_back();
  return path;
}

}  // namespace

MockBackend::MockBackend(std::string root_path, MockGeometry geometry,
                         MockLatencyModel model, std::uint64_t seed)
    : root_(normalized(std::move(root_path))),
      geo_(geometry),
      model_(model),
      rng_(seed) {
  dirs_.insert(root_);
}

BackendCapabilities MockBackend::capabilities() const {
  return {geo_.reports_inodes, geo_.block_size};
}

std::uint64_t MockBackend::blocks_of(std::uint64_t bytes) const noexcept {
  return (bytes + geo_.block_size - 1) / geo_.block_size;
}

std::uint64_t MockBackend::advance(std::uint64_t us) noexcept {
  clock_us_ += us;
  return us;
}

std::uint64_t MockBackend::jitter(std::uint64_t lo, std::uint64_t hi) noexcept {
  return hi > lo ? rng_.next_in_range(lo, hi) : 0;
}

bool MockBackend::parent_exists(const std::string& path) const {
  return dirs_.contains(parent_of(path));
}

DirResult MockBackend::create_directory(const std::string& path) {
  const std::uint64_t elapsed = advance(model_.dir_create_us);
  const std::string p = normalized(path);
  if (dirs_.contains(p) || files_.contains(p)) {
    return {OpStatus::already_exists, elapsed};
  }
  if (!parent_exists(p)) {
    return {OpStatus::not_found, elapsed};
  }
  if (inodes_used_ + 1 > geo_.total_inodes ||
      blocks_used_ + 1 > geo_.total_blocks) {
    return {OpStatus::no_space, elapsed};
  }
  dirs_.insert(p);
  ++inodes_used_;
  ++blocks_used_;  // one block per directory
  return {OpStatus::ok, elapsed};
}

WriteResult MockBackend::create_and_write_file(
    const std::string& path, std::span<const std::uint8_t> content) {
  const std::uint64_t create_us = advance(model_.file_create_us);
  if (++write_ops_ == fail_write_at_) {
    return {OpStatus::io_error, create_us, 0};
  }
  const std::string p = normalized(path);
  if (files_.contains(p) || dirs_.contains(p)) {
    return {OpStatus::already_exists, create_us, 0};
  }
  if (!parent_exists(p)) {
    return {OpStatus::not_found, create_us, 0};
  }
  const std::uint64_t blocks = blocks_of(content.size());
  if (inodes_used_ + 1 > geo_.total_inodes ||
      blocks_used_ + blocks > geo_.total_blocks) {
    return {OpStatus::no_space, create_us, 0};
  }
  const std::uint64_t write_us =
      advance(model_.write_per_block_us * blocks +
              jitter(model_.write_jitter_lo_us, model_.write_jitter_hi_us));
  files_.emplace(p, std::vector<std::uint8_t>(content.begin(), content.end()));
  ++inodes_used_;
  blocks_used_ += blocks;
  return {OpStatus::ok, create_us, write_us};
}

DirResult MockBackend::open_directory(const std::string& path) {
  const std::uint64_t elapsed = advance(model_.dir_open_us);
  if (!dirs_.contains(normalized(path))) {
    return {OpStatus::not_found, elapsed};
  }
  return {OpStatus::ok, elapsed};
}

ReadResult MockBackend::open_and_read_file(const std::string& path,
                                           std::vector<std::uint8_t>& out) {
  out.clear();
  const std::uint64_t open_us = advance(model_.file_open_us);
  const auto it = files_.find(normalized(path));
  if (it == files_.end()) {
    return {OpStatus::not_found, open_us, 0};
  }
  const std::uint64_t read_us =
      advance(model_.read_per_block_us * blocks_of(it->second.size()) +
              jitter(model_.read_jitter_lo_us, model_.read_jitter_hi_us));
  out.assign(it->second.begin(), it->second.end());
  return {OpStatus::ok, open_us, read_us};
}

OpStatus MockBackend::storage_stats(StorageSnapshot& out) {
  out.inodes_free = geo_.reports_inodes ? geo_.total_inodes - inodes_used_ : 0;
  out.blocks_free = geo_.total_blocks - blocks_used_;
  out.block_size = geo_.block_size;
  out.total_bytes = geo_.total_blocks * geo_.block_size;
  out.timestamp_us = clock_us_;
  return OpStatus::ok;
}

bool MockBackend::file_exists(const std::string& path) const {
  return files_.contains(normalized(path));
}

bool MockBackend::remove_file(const std::string& path) {
  const auto it = files_.find(normalized(path));
  if (it == files_.end()) return false;
  blocks_used_ -= blocks_of(it->second.size());
  --inodes_used_;
  files_.erase(it);
  return true;
}

bool MockBackend::flip_bit(const std::string& path, std::uint64_t bit_index) {
  const auto it = files_.find(normalized(path));
  if (it == files_.end() || it->second.empty()) return false;
  auto& bytes = it->second;
  const std::uint64_t bit = bit_index % (bytes.size() * 8);
  bytes[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
  return true;
}

}  // namespace bffs

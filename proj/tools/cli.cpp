#include "cli.hpp"

#include <sys/stat.h>

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bffs/creator.hpp"
#include "bffs/derived.hpp"
#include "bffs/error.hpp"
#include "bffs/mock_backend.hpp"
#include "bffs/reader.hpp"
#include "bffs/real_backend.hpp"
#include "bffs/report.hpp"
#include "bffs/storage_probe.hpp"
#include "bffs/workload.hpp"

namespace bffs::cli {
namespace {

std::atomic<bool> g_stop{false};

void handle_stop_signal(int) { g_stop.store(true); }

struct ScopedSignalHandlers {
  ScopedSignalHandlers() {
    g_stop.store(false);
    prev_int_ = std::signal(SIGINT, handle_stop_signal);
    prev_term_ = std::signal(SIGTERM, handle_stop_signal);
  }
  ~ScopedSignalHandlers() {
    std::signal(SIGINT, prev_int_);
    std::signal(SIGTERM, prev_term_);
  }
  void (*prev_int_)(int);
  void (*prev_term_)(int);
};

/// Simple key=value file named by BFFS_CONFIG. '#' starts a comment.
std::map<std::string, std::string> load_config_file(std::ostream& err) {
  std::map<std::string, std::string> kv;
  const char* path = std::getenv("BFFS_CONFIG");
  if (path == nullptr || *path == '\0') return kv;
  std::ifstream in(path);
  if (!in) {
    err << "warning: BFFS_CONFIG points at unreadable file " << path << "\n";
    return kv;
  }
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = value;
  }
  return kv;
}

/// Ties a flag to a config-file key and an effective-value dump.
/// Precedence: built-in default < config file < command line.
struct OptionRegistry {
  struct Binding {
    std::string key;
    CLI::Option* opt;
    std::function<bool(const std::string&)> set_from_string;
    std::function<std::string()> to_string;
  };
  std::vector<Binding> bindings;

  template <typename T>
  CLI::Option* add(CLI::App* cmd, const std::string& flag, T& var,
                   const std::string& help) {
    CLI::Option* opt = cmd->add_option(flag, var, help);
    register_binding(flag, opt, var);
    return opt;
  }

  CLI::Option* add_flag(CLI::App* cmd, const std::string& flag, bool& var,
                        const std::string& help) {
    CLI::Option* opt = cmd->add_flag(flag, var, help);
    register_binding(flag, opt, var);
    return opt;
  }

  /// Config-file values for flags the user did not pass. Returns the key of
  /// the first unparsable value, if any.
  std::optional<std::string> apply_config(
      const std::map<std::string, std::string>& kv) {
    for (auto& b : bindings) {
      if (b.opt->count() > 0) continue;
      const auto it = kv.find(b.key);
      if (it == kv.end()) continue;
      if (!b.set_from_string(it->second)) return b.key;
    }
    return std::nullopt;
  }

  std::map<std::string, std::string> effective_values() const {
    std::map<std::string, std::string> values;
    for (const auto& b : bindings) values[b.key] = b.to_string();
    return values;
  }

 private:
  template <typename T>
  void register_binding(const std::string& flag, CLI::Option* opt, T& var) {
    std::string key = flag.substr(flag.find_first_not_of('-'));
    bindings.push_back(
        {std::move(key), opt,
         [&var](const std::string& text) {
           return CLI::detail::lexical_cast(text, var);
         },
         [&var] {
           if constexpr (std::is_same_v<T, bool>) {
             return std::string(var ? "true" : "false");
           } else if constexpr (std::is_same_v<T, std::string>) {
             return var;
           } else {
             return std::to_string(var);
           }
         }});
  }
};

struct RunFlags {
  std::string root;
  std::string backend = "real";
  std::uint64_t folders = 1;
  std::uint64_t subfolders = 1;
  std::uint64_t files_per_subfolder = 1;
  std::uint64_t size_mean = 5500;
  std::uint64_t size_sd = 1024;
  std::uint64_t size_min = 1024;
  std::uint64_t size_max = 10240;
  std::uint64_t seed = 1;
  std::uint64_t buckets = 20;
  std::string out_path;
  std::string plot_dir;
  std::string label;
  std::string hist_edges;
  std::uint64_t sample_log = 0;
  std::uint64_t progress = 0;
  bool drop_cache_hint = false;
  bool durability_sync = false;
  std::string from_report;

  MockLatencyModel mock;
  std::uint64_t mock_block_size = 4096;
  std::uint64_t mock_total_blocks = 1ull << 31;
  std::uint64_t mock_total_inodes = 1'200'000'000;
  bool mock_no_inodes = false;
};

void add_schedule_flags(CLI::App* cmd, OptionRegistry& reg, RunFlags& f) {
  reg.add(cmd, "--folders", f.folders, "top-level folders");
  reg.add(cmd, "--subfolders", f.subfolders, "subfolders per folder");
  reg.add(cmd, "--files-per-subfolder", f.files_per_subfolder,
          "files per subfolder");
}

void add_common_flags(CLI::App* cmd, OptionRegistry& reg, RunFlags& f) {
  reg.add(cmd, "--root", f.root, "target directory (mounted filesystem)");
  reg.add(cmd, "--backend", f.backend, "storage backend: real|mock")
      ->check(CLI::IsMember({"real", "mock"}));
  reg.add(cmd, "--size-mean", f.size_mean, "mean file size, bytes");
  reg.add(cmd, "--size-sd", f.size_sd, "file size std deviation, bytes");
  reg.add(cmd, "--size-min", f.size_min, "minimum file size, bytes");
  reg.add(cmd, "--size-max", f.size_max, "maximum file size, bytes");
  reg.add(cmd, "--seed", f.seed, "workload seed (sizes and payloads)");
  reg.add(cmd, "--buckets", f.buckets, "trend samples per phase");
  reg.add(cmd, "--out", f.out_path, "write the JSON report here");
  reg.add(cmd, "--plot-dir", f.plot_dir, "write plot CSVs into this dir");
  reg.add(cmd, "--label", f.label, "run label, e.g. ext4_10m");
  reg.add(cmd, "--sample-log", f.sample_log,
          "log every N-th per-file sample to CSV (0 = off)");
  reg.add(cmd, "--progress", f.progress,
          "progress line every N files on stderr (0 = off)");
  reg.add(cmd, "--hist-edges", f.hist_edges,
          "comma-separated histogram bucket edges, µs");
  reg.add_flag(cmd, "--drop-cache-hint", f.drop_cache_hint,
               "hint page-cache eviction for every file before reading");
  reg.add_flag(cmd, "--durability-sync", f.durability_sync,
               "fsync every file before close (real backend)");

  reg.add(cmd, "--mock-dir-create-us", f.mock.dir_create_us,
          "mock: directory create cost");
  reg.add(cmd, "--mock-dir-open-us", f.mock.dir_open_us,
          "mock: directory open cost");
  reg.add(cmd, "--mock-file-create-us", f.mock.file_create_us,
          "mock: file create cost");
  reg.add(cmd, "--mock-write-per-block-us", f.mock.write_per_block_us,
          "mock: write cost per block");
  reg.add(cmd, "--mock-file-open-us", f.mock.file_open_us,
          "mock: file open cost");
  reg.add(cmd, "--mock-read-per-block-us", f.mock.read_per_block_us,
          "mock: read cost per block");
  reg.add(cmd, "--mock-write-jitter-lo-us", f.mock.write_jitter_lo_us,
          "mock: uniform write jitter lower bound");
  reg.add(cmd, "--mock-write-jitter-hi-us", f.mock.write_jitter_hi_us,
          "mock: uniform write jitter upper bound (exclusive)");
  reg.add(cmd, "--mock-read-jitter-lo-us", f.mock.read_jitter_lo_us,
          "mock: uniform read jitter lower bound");
  reg.add(cmd, "--mock-read-jitter-hi-us", f.mock.read_jitter_hi_us,
          "mock: uniform read jitter upper bound (exclusive)");
  reg.add(cmd, "--mock-block-size", f.mock_block_size, "mock: block size");
  reg.add(cmd, "--mock-total-blocks", f.mock_total_blocks,
          "mock: capacity in blocks");
  reg.add(cmd, "--mock-total-inodes", f.mock_total_inodes,
          "mock: inode capacity");
  reg.add_flag(cmd, "--mock-no-inodes", f.mock_no_inodes,
               "mock: behave like an inode-less filesystem");
}

/// Default the mock root, demand an explicit one for real storage.
std::string resolve_root(RunFlags& f) {
  if (f.root.empty()) {
    if (f.backend != "mock") {
      throw Error(ErrorCode::invalid_schedule,
                  "--root is required for the real backend");
    }
    f.root = "/bench";
  }
  return f.root;
}

std::vector<std::uint64_t> parse_hist_edges(const std::string& text) {
  if (text.empty()) return LatencyHistogram::default_edges();
  std::vector<std::uint64_t> edges;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      edges.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw Error(ErrorCode::invalid_histogram,
                  "--hist-edges: '" + item + "' is not a µs value");
    }
  }
  return edges;
}

bool directory_exists(const std::string& path) {
  struct stat st{};
  return ::stat(path.c_str(), &st) == 0 && S_ISDIR(st.st_mode);
}

struct Session {
  std::unique_ptr<FsBackend> backend;
  RealBackend* real = nullptr;  // non-null when backend is the real one
  std::string kind;
};

/// Validates flags and builds the backend. Throws Error{invalid_schedule}
/// style errors for anything that should exit 2 before touching storage.
Session make_session(RunFlags& f) {
  Session session;
  if (f.sample_log != 0 && f.out_path.empty()) {
    throw Error(ErrorCode::invalid_schedule,
                "--sample-log needs --out to derive the CSV path");
  }
  if (f.backend == "mock") {
    if (f.root.empty()) f.root = "/bench";
    MockGeometry geo{f.mock_block_size, f.mock_total_blocks,
                     f.mock_total_inodes, !f.mock_no_inodes};
    session.backend =
        std::make_unique<MockBackend>(f.root, geo, f.mock, f.seed);
    session.kind = "mock";
    return session;
  }
  if (f.root.empty()) {
    throw Error(ErrorCode::invalid_schedule,
                "--root is required for the real backend");
  }
  if (!directory_exists(f.root)) {
    throw Error(ErrorCode::invalid_schedule,
                "--root: '" + f.root + "' is not an existing directory");
  }
  auto real = std::make_unique<RealBackend>(
      f.root, RealBackendOptions{f.durability_sync});
  session.real = real.get();
  session.backend = std::move(real);
  session.kind = "real";
  return session;
}

std::string sample_log_path(const RunFlags& f, const char* phase) {
  std::string stem = f.out_path;
  const auto dot = stem.find_last_of('.');
  const auto slash = stem.find_last_of('/');
  if (dot != std::string::npos &&
      (slash == std::string::npos || dot > slash)) {
    stem.erase(dot);
  }
  return stem + ".samples_" + phase + ".csv";
}

RunOptions base_run_options(const RunFlags& f, std::ostream& err,
                            std::ofstream* sample_stream) {
  RunOptions opts;
  opts.progress_every_files = f.progress;
  opts.progress_out = f.progress != 0 ? &err : nullptr;
  opts.trend_buckets = f.buckets;
  opts.stop = &g_stop;
  if (sample_stream != nullptr && sample_stream->is_open()) {
    opts.sample_log = sample_stream;
    opts.sample_log_every = f.sample_log;
  }
  return opts;
}

void print_warnings(const RunReport& report, const RunSchedule& schedule,
                    std::ostream& err) {
  for (const auto& w :
       metrics_warnings(report.write, report.read, report.storage)) {
    err << "warning: " << w << "\n";
  }
  if (report.has_write) {
    const auto inode_warning = inode_mismatch_warning(
        report.storage, schedule, report.identity.capabilities.reports_inodes);
    if (inode_warning) err << "warning: " << *inode_warning << "\n";
  }
}

void emit_outputs(const RunReport& report, const RunFlags& f,
                  std::ostream& out) {
  if (!f.out_path.empty()) emit_json(report, f.out_path);
  if (!f.plot_dir.empty()) emit_plotdata(report, f.plot_dir);
  out << emit_table(report);
}

int exit_code_for(const RunReport& report) {
  if (report.write.aborted || report.read.aborted) return kExitAbort;
  if (report.read.checksum_failures > 0 || report.read.missing_files > 0) {
    return kExitIntegrity;
  }
  return kExitOk;
}

RunReport start_report(const RunFlags& f, const Session& session,
                       const RunSchedule& schedule,
                       const FileSizeDistribution& dist,
                       const OptionRegistry& reg) {
  RunReport report;
  report.identity.label = f.label;
  report.identity.backend_kind = session.kind;
  report.identity.capabilities = session.backend->capabilities();
  report.identity.config = reg.effective_values();
  report.identity.run_start_us = session.backend->wall_us();
  report.identity.cache_drop_requested = f.drop_cache_hint;
  report.identity.durability_sync = f.durability_sync;
  // Clock calibration is a real-time diagnostic; mock timing is modeled, and
  // a measured value would break report reproducibility.
  report.identity.timer_overhead_ns =
      session.kind == "real" ? measure_timer_overhead_ns() : 0;
  report.schedule = schedule;
  report.distribution = dist;
  report.write_hist = LatencyHistogram(parse_hist_edges(f.hist_edges));
  report.read_hist = report.write_hist;
  return report;
}

StorageSnapshot snapshot_or_throw(FsBackend& backend) {
  StorageSnapshot snap;
  if (backend.storage_stats(snap) != OpStatus::ok) {
    throw Error(ErrorCode::io_error, "storage stats query failed");
  }
  return snap;
}

void run_write_phase(RunReport& report, const RunFlags& f, Session& session,
                     RunMetrics& metrics, std::ostream& err) {
  std::ofstream sample_stream;
  if (f.sample_log != 0 && !f.out_path.empty()) {
    sample_stream.open(sample_log_path(f, "write"),
                       std::ios::binary | std::ios::trunc);
    sample_stream << "ordinal,size_bytes,create_us,write_us\n";
  }
  RunOptions opts = base_run_options(f, err, &sample_stream);

  const StorageSnapshot before = snapshot_or_throw(*session.backend);
  report.write = run_create(report.schedule, report.distribution,
                            *session.backend, metrics, opts);
  report.storage = capture_delta(*session.backend, before);
  report.write_tracker = metrics.write_tracker;
  report.write_hist = metrics.write_hist;
  report.has_write = true;
  if (report.write.aborted) {
    report.incomplete = true;
    err << "write phase aborted: " << report.write.abort_reason << "\n";
  }
}

void run_read_phase(RunReport& report, const RunFlags& f, Session& session,
                    RunMetrics& metrics, std::ostream& err) {
  std::ofstream sample_stream;
  if (f.sample_log != 0 && !f.out_path.empty()) {
    sample_stream.open(sample_log_path(f, "read"),
                       std::ios::binary | std::ios::trunc);
    sample_stream << "ordinal,size_bytes,open_us,read_us,verify\n";
  }
  ReadOptions opts;
  static_cast<RunOptions&>(opts) = base_run_options(f, err, &sample_stream);
  opts.drop_cache_first = f.drop_cache_hint;

  if (f.drop_cache_hint && session.real != nullptr) {
    // Untimed pre-pass; a hint, not a guarantee of cold caches.
    for (std::uint64_t fo = 0; fo < report.schedule.folders; ++fo) {
      for (std::uint64_t s = 0; s < report.schedule.subfolders_per_folder;
           ++s) {
        const std::string dir = report.schedule.subfolder_path(fo, s);
        for (std::uint64_t k = 0; k < report.schedule.files_per_subfolder;
             ++k) {
          session.real->drop_cache_hint(dir + "/" +
                                        report.schedule.file_name(k));
        }
      }
    }
  }

  report.read = run_read(report.schedule, *session.backend, metrics, opts);
  report.read_tracker = metrics.read_tracker;
  report.read_hist = metrics.read_hist;
  report.has_read = true;
  if (report.read.aborted) {
    report.incomplete = true;
    err << "read phase aborted: " << report.read.abort_reason << "\n";
  }
}

void finalize_report(RunReport& report, Session& session,
                     std::uint64_t trt_run_us) {
  report.identity.run_end_us = session.backend->wall_us();
  report.derived =
      compute_derived(report.write, report.read, report.storage,
                      report.identity.capabilities.block_size, trt_run_us);
}

int cmd_create(RunFlags& f, const OptionRegistry& reg, std::ostream& out,
               std::ostream& err) {
  const RunSchedule schedule = plan_schedule(
      f.folders, f.subfolders, f.files_per_subfolder, resolve_root(f));
  FileSizeDistribution dist{f.size_mean, f.size_sd, f.size_min, f.size_max,
                            f.seed};
  validate(dist);
  Session session = make_session(f);

  ScopedSignalHandlers signals;
  RunMetrics metrics(parse_hist_edges(f.hist_edges));
  RunReport report = start_report(f, session, schedule, dist, reg);
  const std::uint64_t t0 = session.backend->mono_us();
  run_write_phase(report, f, session, metrics, err);
  finalize_report(report, session, session.backend->mono_us() - t0);
  print_warnings(report, schedule, err);
  emit_outputs(report, f, out);
  return report.write.aborted ? kExitAbort : kExitOk;
}

int cmd_read(RunFlags& f, const OptionRegistry& reg, std::ostream& out,
             std::ostream& err) {
  RunReport report;
  RunSchedule schedule;
  FileSizeDistribution dist;
  Session session;

  if (!f.from_report.empty()) {
    std::ifstream in(f.from_report, std::ios::binary);
    if (!in) {
      throw Error(ErrorCode::invalid_schedule,
                  "--from-report: cannot read '" + f.from_report + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    report = parse_json(buffer.str());
    schedule = report.schedule;
    dist = report.distribution;
    if (f.root.empty()) f.root = schedule.root_path;
    if (f.backend == "real" && report.identity.backend_kind == "mock") {
      // A mock tree lives only inside the process that created it.
      throw Error(ErrorCode::invalid_schedule,
                  "--from-report describes a mock run; reading it back "
                  "requires `run --backend mock` in one invocation");
    }
    session = make_session(f);
    if (!f.label.empty()) report.identity.label = f.label;
  } else {
    schedule = plan_schedule(f.folders, f.subfolders,
                             f.files_per_subfolder, resolve_root(f));
    dist = FileSizeDistribution{f.size_mean, f.size_sd, f.size_min,
                                f.size_max, f.seed};
    validate(dist);
    session = make_session(f);
    report = start_report(f, session, schedule, dist, reg);
  }

  ScopedSignalHandlers signals;
  // Without an explicit override, keep the bucket layout of the stored
  // write phase so both histograms in the merged report line up.
  RunMetrics metrics(!f.from_report.empty() && f.hist_edges.empty()
                         ? report.write_hist.edges()
                         : parse_hist_edges(f.hist_edges));
  const std::uint64_t t0 = session.backend->mono_us();
  run_read_phase(report, f, session, metrics, err);
  const std::uint64_t read_wall = session.backend->mono_us() - t0;
  finalize_report(report, session, report.write.phase_wall_us + read_wall);
  print_warnings(report, schedule, err);
  emit_outputs(report, f, out);
  return exit_code_for(report);
}

int cmd_run(RunFlags& f, const OptionRegistry& reg, std::ostream& out,
            std::ostream& err) {
  const RunSchedule schedule = plan_schedule(
      f.folders, f.subfolders, f.files_per_subfolder, resolve_root(f));
  FileSizeDistribution dist{f.size_mean, f.size_sd, f.size_min, f.size_max,
                            f.seed};
  validate(dist);
  Session session = make_session(f);

  ScopedSignalHandlers signals;
  RunMetrics metrics(parse_hist_edges(f.hist_edges));
  RunReport report = start_report(f, session, schedule, dist, reg);
  const std::uint64_t t0 = session.backend->mono_us();
  run_write_phase(report, f, session, metrics, err);
  if (!report.write.aborted) {
    run_read_phase(report, f, session, metrics, err);
  }
  finalize_report(report, session, session.backend->mono_us() - t0);
  print_warnings(report, schedule, err);
  emit_outputs(report, f, out);
  return exit_code_for(report);
}

struct ReplayFlags {
  std::string in_path;
  std::string out_path;
  std::string plot_dir;
};

/// Metrics-only mode: recompute every derived cell from the stored primary
/// values and re-render. Lets archived or hand-built fixture reports flow
/// through the same formulas as live runs.
int cmd_replay(const ReplayFlags& f, std::ostream& out) {
  std::ifstream in(f.in_path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::invalid_schedule,
                "--in: cannot read '" + f.in_path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  RunReport report = parse_json(buffer.str());
  report.derived = compute_derived(report.write, report.read, report.storage,
                                   report.identity.capabilities.block_size,
                                   report.derived.trt_run_us);
  if (!f.out_path.empty()) emit_json(report, f.out_path);
  if (!f.plot_dir.empty()) emit_plotdata(report, f.plot_dir);
  out << emit_table(report);
  return kExitOk;
}

struct AdviseFlags {
  std::string fs_type;
  std::uint64_t files = 1'000'000'000;
  std::uint64_t disk_bytes = 14'000'000'000'000ull;
  std::uint64_t folders = 100;
  std::uint64_t files_per_subfolder = 100'000;
};

/// Prints (never executes) a preparation command for the target filesystem,
/// sized for the requested file count with a 1.2x inode safety factor.
int cmd_advise(const AdviseFlags& f, std::ostream& out) {
  const std::uint64_t per_folder = f.folders * f.files_per_subfolder;
  const std::uint64_t subfolders =
      std::max<std::uint64_t>(1, (f.files + per_folder - 1) / per_folder);
  const RunSchedule schedule = plan_schedule(
      f.folders, subfolders, f.files_per_subfolder, "/advisory-only");
  const std::uint64_t needed = expected_inodes(schedule);
  const std::uint64_t padded =
      needed + (needed + 4) / 5;  // 1.2x, rounded up

  out << "filesystem preparation advisory (" << f.fs_type << ")\n"
      << "  target: " << f.files << " files as " << f.folders << " x "
      << subfolders << " x " << f.files_per_subfolder << "\n"
      << "  inodes for files + folders + subfolders: " << needed << "\n"
      << "  with 1.2x safety factor: " << padded << "\n\n";

  if (f.fs_type == "ext4") {
    out << "  mkfs.ext4 -N " << padded << " -b 4096 /dev/xxx\n\n"
        << "  ext4 fixes its inode count at format time and the stock default"
           " (roughly one\n  inode per 16KB of disk, ~240M on common sizes)"
           " is far too small for this tree;\n  -N raises it. 4KB blocks on a"
           " 14TB-class drive support about 1.2 billion inodes.\n";
    if (padded > f.disk_bytes / 4096) {
      out << "  warning: requested inode count exceeds one per 4096-byte "
             "block of this disk\n";
    }
  } else if (f.fs_type == "xfs") {
    out << "  mkfs.xfs -i maxpct=10 -f /dev/xxx\n\n"
        << "  xfs allocates inodes dynamically while the run executes, but "
           "needs a share of\n  the disk reserved for inode structures; "
           "maxpct=10 dedicates 10% to them.\n";
  } else if (f.fs_type == "btrfs") {
    out << "  mkfs.btrfs -f /dev/xxx\n\n"
        << "  btrfs does not use inodes the way other filesystems do: "
           "metadata is dynamic\n  and df reports inode=0, so no inode "
           "sizing flag exists. Inode accounting is\n  skipped for such "
           "targets.\n";
  } else if (f.fs_type == "zfs") {
    out << "  zpool create -f zfspool /dev/xxx\n\n"
        << "  zfs needs a pool created and mounted before any reads or "
           "writes; it manages\n  metadata dynamically. Note its default "
           "128KB record size when comparing block\n  metrics against "
           "4KB-block filesystems.\n";
  } else if (f.fs_type == "f2fs") {
    out << "  mkfs.f2fs -i -s 10 -z 10 -f /dev/xxx\n\n"
        << "  warning: f2fs inode capacity tops out near 630 million on a "
           "14TB-class drive;\n  creating this tree";
    if (needed > 630'000'000ull) {
      out << " (" << needed
          << " inodes) exceeds that ceiling — runs beyond ~600M files "
             "failed there";
    }
    out << ". Plan for 100M files or fewer per filesystem.\n";
  }
  out << "\nThis command prints suggestions only; it never creates, mounts "
         "or modifies filesystems.\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"small-file metadata workload benchmark"};
  app.require_subcommand(1);

  RunFlags create_flags, read_flags, run_flags;
  ReplayFlags replay_flags;
  AdviseFlags advise_flags;
  OptionRegistry create_reg, read_reg, run_reg;

  CLI::App* create_cmd = app.add_subcommand(
      "create", "write phase: build the tree and write framed files");
  add_schedule_flags(create_cmd, create_reg, create_flags);
  add_common_flags(create_cmd, create_reg, create_flags);

  CLI::App* read_cmd = app.add_subcommand(
      "read", "read phase: walk the tree, verify checksums");
  add_schedule_flags(read_cmd, read_reg, read_flags);
  add_common_flags(read_cmd, read_reg, read_flags);
  read_reg.add(read_cmd, "--from-report", read_flags.from_report,
               "reuse schedule/seed/label from a create-phase report");

  CLI::App* run_cmd =
      app.add_subcommand("run", "create then read in one process");
  add_schedule_flags(run_cmd, run_reg, run_flags);
  add_common_flags(run_cmd, run_reg, run_flags);

  CLI::App* replay_cmd = app.add_subcommand(
      "replay", "recompute derived metrics from a stored report");
  replay_cmd->add_option("--in", replay_flags.in_path, "stored JSON report")
      ->required();
  replay_cmd->add_option("--out", replay_flags.out_path,
                         "re-emit the recomputed report here");
  replay_cmd->add_option("--plot-dir", replay_flags.plot_dir,
                         "write plot CSVs into this dir");

  CLI::App* advise_cmd = app.add_subcommand(
      "advise", "print filesystem preparation suggestions (no execution)");
  advise_cmd
      ->add_option("--fs-type", advise_flags.fs_type,
                   "ext4|xfs|btrfs|zfs|f2fs")
      ->required()
      ->check(CLI::IsMember({"ext4", "xfs", "btrfs", "zfs", "f2fs"}));
  advise_cmd->add_option("--files", advise_flags.files, "target file count");
  advise_cmd->add_option("--disk-bytes", advise_flags.disk_bytes,
                         "target device capacity");
  advise_cmd->add_option("--folders", advise_flags.folders,
                         "planned top-level folders");
  advise_cmd->add_option("--files-per-subfolder",
                         advise_flags.files_per_subfolder,
                         "planned files per subfolder");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  const auto config = load_config_file(err);
  for (auto* reg : {&create_reg, &read_reg, &run_reg}) {
    if (const auto bad_key = reg->apply_config(config)) {
      err << "error: config file value for '" << *bad_key
          << "' is not valid\n";
      return kExitValidation;
    }
  }

  try {
    if (create_cmd->parsed()) {
      return cmd_create(create_flags, create_reg, out, err);
    }
    if (read_cmd->parsed()) return cmd_read(read_flags, read_reg, out, err);
    if (run_cmd->parsed()) return cmd_run(run_flags, run_reg, out, err);
    if (replay_cmd->parsed()) return cmd_replay(replay_flags, out);
    if (advise_cmd->parsed()) return cmd_advise(advise_flags, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::invalid_schedule:
      case ErrorCode::overflow:
      case ErrorCode::invalid_distribution:
      case ErrorCode::invalid_histogram:
      case ErrorCode::parse_error:
        return kExitValidation;
      default:
        return kExitAbort;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitAbort;
  }
  return kExitValidation;
}

}  // namespace bffs::cli

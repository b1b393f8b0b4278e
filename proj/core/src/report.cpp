#include "bffs/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bffs/error.hpp"

namespace bffs {
namespace {

using nlohmann::json;

json snapshot_to_json(const StorageSnapshot& s) {
  return {{"inodes_free_count", s.inodes_free},
          {"blocks_free_count", s.blocks_free},
          {"block_size_bytes", s.block_size},
          {"total_bytes", s.total_bytes},
          {"timestamp_us", s.timestamp_us}};
}

StorageSnapshot snapshot_from_json(const json& j) {
  StorageSnapshot s;
  s.inodes_free = j.at("inodes_free_count").get<std::uint64_t>();
  s.blocks_free = j.at("blocks_free_count").get<std::uint64_t>();
  s.block_size = j.at("block_size_bytes").get<std::uint64_t>();
  s.total_bytes = j.at("total_bytes").get<std::uint64_t>();
  s.timestamp_us = j.at("timestamp_us").get<std::uint64_t>();
  return s;
}

json trend_to_json(const std::vector<FolderSample>& trend) {
  json arr = json::array();
  for (const auto& sample : trend) {
    arr.push_back({{"folder_ordinal", sample.folder_ordinal},
                   {"phase", to_string(sample.phase)},
                   {"total_us", sample.total_us},
                   {"files_count", sample.files},
                   {"throughput_files_per_s", sample.throughput_files_per_s()}});
  }
  return arr;
}

std::vector<FolderSample> trend_from_json(const json& arr) {
  std::vector<FolderSample> trend;
  trend.reserve(arr.size());
  for (const auto& j : arr) {
    FolderSample sample;
    sample.folder_ordinal = j.at("folder_ordinal").get<std::uint64_t>();
    sample.phase = j.at("phase").get<std::string>() == "read" ? Phase::read
                                                              : Phase::write;
    sample.total_us = j.at("total_us").get<std::uint64_t>();
    sample.files = j.at("files_count").get<std::uint64_t>();
    trend.push_back(sample);
  }
  return trend;
}

json tracker_to_json(const LatencyTracker& t) {
  return {{"samples_count", t.count},
          {"sum_us", t.sum_us},
          {"min_us", t.min_us},
          {"max_us", t.max_us}};
}

LatencyTracker tracker_from_json(const json& j) {
  LatencyTracker t;
  t.count = j.at("samples_count").get<std::uint64_t>();
  t.sum_us = j.at("sum_us").get<std::uint64_t>();
  t.min_us = j.at("min_us").get<std::uint64_t>();
  t.max_us = j.at("max_us").get<std::uint64_t>();
  return t;
}

json histogram_to_json(const LatencyHistogram& h) {
  return {{"edges_us", h.edges()},
          {"bucket_counts", h.counts()},
          {"underflow_count", h.underflow()},
          {"overflow_count", h.overflow()}};
}

LatencyHistogram histogram_from_json(const json& j) {
  return LatencyHistogram::restore(
      j.at("edges_us").get<std::vector<std::uint64_t>>(),
      j.at("bucket_counts").get<std::vector<std::uint64_t>>(),
      j.at("underflow_count").get<std::uint64_t>(),
      j.at("overflow_count").get<std::uint64_t>());
}

}  // namespace

std::string serialize_json(const RunReport& r) {
  json j;
  j["schema_version"] = RunReport::kSchemaVersion;
  j["incomplete"] = r.incomplete;
  j["has_write"] = r.has_write;
  j["has_read"] = r.has_read;

  j["identity"] = {{"label", r.identity.label},
                   {"backend_kind", r.identity.backend_kind},
                   {"run_start_us", r.identity.run_start_us},
                   {"run_end_us", r.identity.run_end_us},
                   {"block_size_bytes", r.identity.capabilities.block_size},
                   {"reports_inodes", r.identity.capabilities.reports_inodes},
                   {"config", r.identity.config},
                   {"timer_overhead_ns", r.identity.timer_overhead_ns},
                   {"cache_drop_requested", r.identity.cache_drop_requested},
                   {"durability_sync", r.identity.durability_sync}};

  j["schedule"] = {
      {"folders_count", r.schedule.folders},
      {"subfolders_per_folder_count", r.schedule.subfolders_per_folder},
      {"files_per_subfolder_count", r.schedule.files_per_subfolder},
      {"total_files_count", r.schedule.total_files},
      {"root_path", r.schedule.root_path},
      {"folder_template", r.schedule.names.folder},
      {"subfolder_template", r.schedule.names.subfolder},
      {"file_template", r.schedule.names.file}};

  j["distribution"] = {{"mean_bytes", r.distribution.mean_bytes},
                       {"std_dev_bytes", r.distribution.std_dev_bytes},
                       {"min_bytes", r.distribution.min_bytes},
                       {"max_bytes", r.distribution.max_bytes},
                       {"seed_u64", r.distribution.seed}};

  j["write"] = {{"files_written_count", r.write.files_written},
                {"bytes_written_bytes", r.write.bytes_written},
                {"blocks_written_count", r.write.blocks_written},
                {"folder_create_total_us", r.write.folder_create_total_us},
                {"file_create_total_us", r.write.file_create_total_us},
                {"file_write_total_us", r.write.file_write_total_us},
                {"errors_count", r.write.errors},
                {"phase_wall_us", r.write.phase_wall_us},
                {"aborted", r.write.aborted},
                {"abort_reason", r.write.abort_reason},
                {"trend", trend_to_json(r.write.per_folder_series)}};

  j["read"] = {{"files_read_count", r.read.files_read},
               {"bytes_read_bytes", r.read.bytes_read},
               {"blocks_read_count", r.read.blocks_read},
               {"folder_search_total_us", r.read.folder_search_total_us},
               {"file_open_total_us", r.read.file_open_total_us},
               {"file_read_total_us", r.read.file_read_total_us},
               {"checksum_failures_count", r.read.checksum_failures},
               {"missing_files_count", r.read.missing_files},
               {"errors_count", r.read.errors},
               {"phase_wall_us", r.read.phase_wall_us},
               {"aborted", r.read.aborted},
               {"abort_reason", r.read.abort_reason},
               {"trend", trend_to_json(r.read.per_folder_series)}};

  j["write_latency"] = tracker_to_json(r.write_tracker);
  j["read_latency"] = tracker_to_json(r.read_tracker);
  j["write_histogram"] = histogram_to_json(r.write_hist);
  j["read_histogram"] = histogram_to_json(r.read_hist);

  j["storage"] = {{"before", snapshot_to_json(r.storage.before)},
                  {"after", snapshot_to_json(r.storage.after)},
                  {"inodes_used_count", r.storage.inodes_used},
                  {"blocks_used_count", r.storage.blocks_used},
                  {"bytes_used_bytes", r.storage.bytes_used}};

  j["derived"] = {{"wth_bytes_per_us", r.derived.wth_bytes_per_us},
                  {"rth_bytes_per_us", r.derived.rth_bytes_per_us},
                  {"fws_files_per_ms", r.derived.fws_files_per_ms},
                  {"frs_files_per_ms", r.derived.frs_files_per_ms},
                  {"bkws_blocks_per_ms", r.derived.bkws_blocks_per_ms},
                  {"bkrs_blocks_per_ms", r.derived.bkrs_blocks_per_ms},
                  {"fcwt_us", r.derived.fcwt_us},
                  {"fort_us", r.derived.fort_us},
                  {"tbyw_bytes", r.derived.tbyw_bytes},
                  {"tbyr_bytes", r.derived.tbyr_bytes},
                  {"tbkw_blocks_count", r.derived.tbkw_blocks},
                  {"tbkr_blocks_count", r.derived.tbkr_blocks},
                  {"dsu_bytes", r.derived.dsu_bytes},
                  {"dsuo_pct", r.derived.dsuo_pct},
                  {"cpuo_pct", r.derived.cpuo_pct},
                  {"inodes_used_count", r.derived.inodes_used},
                  {"twt_us", r.derived.twt_us},
                  {"tread_us", r.derived.tread_us},
                  {"trt_run_us", r.derived.trt_run_us}};

  return j.dump(2) + "\n";
}

RunReport parse_json(const std::string& text) {
  const json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    throw Error(ErrorCode::parse_error, "malformed report JSON");
  }
  try {
    if (j.at("schema_version").get<int>() != RunReport::kSchemaVersion) {
      throw Error(ErrorCode::parse_error, "unsupported report schema version");
    }
    RunReport r;
    r.incomplete = j.at("incomplete").get<bool>();
    r.has_write = j.at("has_write").get<bool>();
    r.has_read = j.at("has_read").get<bool>();

    const json& id = j.at("identity");
    r.identity.label = id.at("label").get<std::string>();
    r.identity.backend_kind = id.at("backend_kind").get<std::string>();
    r.identity.run_start_us = id.at("run_start_us").get<std::uint64_t>();
    r.identity.run_end_us = id.at("run_end_us").get<std::uint64_t>();
    r.identity.capabilities.block_size =
        id.at("block_size_bytes").get<std::uint64_t>();
    r.identity.capabilities.reports_inodes =
        id.at("reports_inodes").get<bool>();
    r.identity.config =
        id.at("config").get<std::map<std::string, std::string>>();
    r.identity.timer_overhead_ns =
        id.at("timer_overhead_ns").get<std::uint64_t>();
    r.identity.cache_drop_requested =
        id.at("cache_drop_requested").get<bool>();
    r.identity.durability_sync = id.at("durability_sync").get<bool>();

    const json& sch = j.at("schedule");
    r.schedule.folders = sch.at("folders_count").get<std::uint64_t>();
    r.schedule.subfolders_per_folder =
        sch.at("subfolders_per_folder_count").get<std::uint64_t>();
    r.schedule.files_per_subfolder =
        sch.at("files_per_subfolder_count").get<std::uint64_t>();
    r.schedule.total_files = sch.at("total_files_count").get<std::uint64_t>();
    r.schedule.root_path = sch.at("root_path").get<std::string>();
    r.schedule.names.folder = sch.at("folder_template").get<std::string>();
    r.schedule.names.subfolder =
        sch.at("subfolder_template").get<std::string>();
    r.schedule.names.file = sch.at("file_template").get<std::string>();

    const json& dist = j.at("distribution");
    r.distribution.mean_bytes = dist.at("mean_bytes").get<std::uint64_t>();
    r.distribution.std_dev_bytes =
        dist.at("std_dev_bytes").get<std::uint64_t>();
    r.distribution.min_bytes = dist.at("min_bytes").get<std::uint64_t>();
    r.distribution.max_bytes = dist.at("max_bytes").get<std::uint64_t>();
    r.distribution.seed = dist.at("seed_u64").get<std::uint64_t>();

    const json& w = j.at("write");
    r.write.files_written = w.at("files_written_count").get<std::uint64_t>();
    r.write.bytes_written = w.at("bytes_written_bytes").get<std::uint64_t>();
    r.write.blocks_written =
        w.at("blocks_written_count").get<std::uint64_t>();
    r.write.folder_create_total_us =
        w.at("folder_create_total_us").get<std::uint64_t>();
    r.write.file_create_total_us =
        w.at("file_create_total_us").get<std::uint64_t>();
    r.write.file_write_total_us =
        w.at("file_write_total_us").get<std::uint64_t>();
    r.write.errors = w.at("errors_count").get<std::uint64_t>();
    r.write.phase_wall_us = w.at("phase_wall_us").get<std::uint64_t>();
    r.write.aborted = w.at("aborted").get<bool>();
    r.write.abort_reason = w.at("abort_reason").get<std::string>();
    r.write.per_folder_series = trend_from_json(w.at("trend"));

    const json& rd = j.at("read");
    r.read.files_read = rd.at("files_read_count").get<std::uint64_t>();
    r.read.bytes_read = rd.at("bytes_read_bytes").get<std::uint64_t>();
    r.read.blocks_read = rd.at("blocks_read_count").get<std::uint64_t>();
    r.read.folder_search_total_us =
        rd.at("folder_search_total_us").get<std::uint64_t>();
    r.read.file_open_total_us =
        rd.at("file_open_total_us").get<std::uint64_t>();
    r.read.file_read_total_us =
        rd.at("file_read_total_us").get<std::uint64_t>();
    r.read.checksum_failures =
        rd.at("checksum_failures_count").get<std::uint64_t>();
    r.read.missing_files = rd.at("missing_files_count").get<std::uint64_t>();
    r.read.errors = rd.at("errors_count").get<std::uint64_t>();
    r.read.phase_wall_us = rd.at("phase_wall_us").get<std::uint64_t>();
    r.read.aborted = rd.at("aborted").get<bool>();
    r.read.abort_reason = rd.at("abort_reason").get<std::string>();
    r.read.per_folder_series = trend_from_json(rd.at("trend"));

    r.write_tracker = tracker_from_json(j.at("write_latency"));
    r.read_tracker = tracker_from_json(j.at("read_latency"));
    r.write_hist = histogram_from_json(j.at("write_histogram"));
    r.read_hist = histogram_from_json(j.at("read_histogram"));

    const json& st = j.at("storage");
    r.storage.before = snapshot_from_json(st.at("before"));
    r.storage.after = snapshot_from_json(st.at("after"));
    r.storage.inodes_used = st.at("inodes_used_count").get<std::uint64_t>();
    r.storage.blocks_used = st.at("blocks_used_count").get<std::int64_t>();
    r.storage.bytes_used = st.at("bytes_used_bytes").get<std::int64_t>();

    const json& d = j.at("derived");
    r.derived.wth_bytes_per_us = d.at("wth_bytes_per_us").get<double>();
    r.derived.rth_bytes_per_us = d.at("rth_bytes_per_us").get<double>();
    r.derived.fws_files_per_ms =
        d.at("fws_files_per_ms").get<std::uint64_t>();
    r.derived.frs_files_per_ms =
        d.at("frs_files_per_ms").get<std::uint64_t>();
    r.derived.bkws_blocks_per_ms =
        d.at("bkws_blocks_per_ms").get<std::uint64_t>();
    r.derived.bkrs_blocks_per_ms =
        d.at("bkrs_blocks_per_ms").get<std::uint64_t>();
    r.derived.fcwt_us = d.at("fcwt_us").get<double>();
    r.derived.fort_us = d.at("fort_us").get<double>();
    r.derived.tbyw_bytes = d.at("tbyw_bytes").get<std::uint64_t>();
    r.derived.tbyr_bytes = d.at("tbyr_bytes").get<std::uint64_t>();
    r.derived.tbkw_blocks = d.at("tbkw_blocks_count").get<std::int64_t>();
    r.derived.tbkr_blocks = d.at("tbkr_blocks_count").get<std::uint64_t>();
    r.derived.dsu_bytes = d.at("dsu_bytes").get<std::int64_t>();
    r.derived.dsuo_pct = d.at("dsuo_pct").get<double>();
    r.derived.cpuo_pct = d.at("cpuo_pct").get<double>();
    r.derived.inodes_used = d.at("inodes_used_count").get<std::uint64_t>();
    r.derived.twt_us = d.at("twt_us").get<std::uint64_t>();
    r.derived.tread_us = d.at("tread_us").get<std::uint64_t>();
    r.derived.trt_run_us = d.at("trt_run_us").get<std::uint64_t>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error,
                std::string("report JSON missing or mistyped field: ") +
                    e.what());
  }
}

void emit_json(const RunReport& report, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << serialize_json(report);
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorCode::io_error, "failed to write report to " + tmp);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::io_error, "failed to move report into " + path);
  }
}

namespace {

std::string format_seconds(std::uint64_t us) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", static_cast<double>(us) / 1e6);
  return buf;
}

std::string format_gb(double bytes) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", bytes / 1e9);
  return buf;
}

std::string format_int(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
  return buf;
}

void format_row(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i != 0) out += "  ";
    out += cells[i];
  }
  out += '\n';
}

}  // namespace

std::string emit_table(const RunReport& r) {
  std::string out;
  char head[256];
  std::snprintf(head, sizeof(head),
                "run: %s  backend=%s  block=%llu  schedule=%llux%llux%llu "
                "(%llu files)  seed=%llu\n",
                r.identity.label.empty() ? "(unlabeled)"
                                         : r.identity.label.c_str(),
                r.identity.backend_kind.c_str(),
                static_cast<unsigned long long>(
                    r.identity.capabilities.block_size),
                static_cast<unsigned long long>(r.schedule.folders),
                static_cast<unsigned long long>(
                    r.schedule.subfolders_per_folder),
                static_cast<unsigned long long>(
                    r.schedule.files_per_subfolder),
                static_cast<unsigned long long>(r.schedule.total_files),
                static_cast<unsigned long long>(r.distribution.seed));
  out += head;

  const auto& d = r.derived;
  out += "\nwrite:\n";
  format_row(out, {"FWTmin", "FWTave", "FWTmax", "WTh", "TFWT", "TfWT", "TWT",
                   "FWs", "BkWs", "TFCWT", "FCWT", "TByW", "TBkW", "DSU",
                   "DSUO", "Inodes"});
  format_row(
      out,
      {std::to_string(r.write_tracker.min_us),
       format_int(r.write_tracker.average_us()),
       std::to_string(r.write_tracker.max_us), format_int(d.wth_bytes_per_us),
       format_seconds(r.write.folder_create_total_us),
       format_seconds(r.write.file_write_total_us), format_seconds(d.twt_us),
       std::to_string(d.fws_files_per_ms),
       std::to_string(d.bkws_blocks_per_ms),
       format_seconds(r.write.file_create_total_us), format_int(d.fcwt_us),
       format_gb(static_cast<double>(d.tbyw_bytes)),
       std::to_string(d.tbkw_blocks),
       format_gb(static_cast<double>(d.dsu_bytes)),
       format_int(d.dsuo_pct) + "%", std::to_string(d.inodes_used)});

  out += "\nread:\n";
  format_row(out, {"FRTmin", "FRTave", "FRTmax", "RTh", "TFRT", "TfRT",
                   "TRead", "FRs", "BkRs", "TFORT", "FORT", "TByR", "TBkR",
                   "TRTrun", "CPUO", "BkSize"});
  format_row(
      out,
      {std::to_string(r.read_tracker.min_us),
       format_int(r.read_tracker.average_us()),
       std::to_string(r.read_tracker.max_us), format_int(d.rth_bytes_per_us),
       format_seconds(r.read.folder_search_total_us),
       format_seconds(r.read.file_read_total_us), format_seconds(d.tread_us),
       std::to_string(d.frs_files_per_ms),
       std::to_string(d.bkrs_blocks_per_ms),
       format_seconds(r.read.file_open_total_us), format_int(d.fort_us),
       format_gb(static_cast<double>(d.tbyr_bytes)),
       std::to_string(d.tbkr_blocks), format_seconds(d.trt_run_us),
       format_int(d.cpuo_pct) + "%",
       std::to_string(r.identity.capabilities.block_size)});

  out += "\nstorage:\n";
  format_row(out, {"parameter", "before", "used", "after"});
  format_row(out, {"inodes", std::to_string(r.storage.before.inodes_free),
                   std::to_string(r.storage.inodes_used),
                   std::to_string(r.storage.after.inodes_free)});
  format_row(out, {"blocks", std::to_string(r.storage.before.blocks_free),
                   std::to_string(r.storage.blocks_used),
                   std::to_string(r.storage.after.blocks_free)});
  format_row(out, {"bytes", std::to_string(r.storage.before.total_bytes),
                   std::to_string(r.storage.bytes_used),
                   std::to_string(r.storage.after.blocks_free *
                                  r.storage.after.block_size)});

  char tail[160];
  std::snprintf(tail, sizeof(tail),
                "\n%llu failed checksums, %llu missing files, %llu write "
                "errors, %llu read errors\n",
                static_cast<unsigned long long>(r.read.checksum_failures),
                static_cast<unsigned long long>(r.read.missing_files),
                static_cast<unsigned long long>(r.write.errors),
                static_cast<unsigned long long>(r.read.errors));
  out += tail;
  if (r.incomplete) out += "NOTE: run incomplete\n";
  return out;
}

namespace {

void write_histogram_csv(const LatencyHistogram& hist,
                         const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << "bucket_low_us,bucket_high_us,count\n";
  out << "-inf," << hist.edges().front() << ',' << hist.underflow() << '\n';
  for (std::size_t i = 0; i + 1 < hist.edges().size(); ++i) {
    out << hist.edges()[i] << ',' << hist.edges()[i + 1] << ','
        << hist.counts()[i] << '\n';
  }
  out << hist.edges().back() << ",inf," << hist.overflow() << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::io_error, "failed to write " + path);
}

void write_trend_csv(const std::vector<FolderSample>& trend,
                     const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << "sample_ordinal,folder_ordinal,throughput_files_per_s\n";
  for (std::size_t i = 0; i < trend.size(); ++i) {
    char line[96];
    std::snprintf(line, sizeof(line), "%llu,%llu,%.6f\n",
                  static_cast<unsigned long long>(i + 1),
                  static_cast<unsigned long long>(trend[i].folder_ordinal),
                  trend[i].throughput_files_per_s());
    out << line;
  }
  out.flush();
  if (!out) throw Error(ErrorCode::io_error, "failed to write " + path);
}

}  // namespace

void emit_plotdata(const RunReport& report, const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw Error(ErrorCode::io_error,
                "cannot create plot directory " + out_dir);
  }
  write_histogram_csv(report.write_hist, out_dir + "/hist_write.csv");
  write_histogram_csv(report.read_hist, out_dir + "/hist_read.csv");
  write_trend_csv(report.write.per_folder_series,
                  out_dir + "/trend_write.csv");
  write_trend_csv(report.read.per_folder_series, out_dir + "/trend_read.csv");
}

}  // namespace bffs

#include "bffs/report.hpp"

#include <gtest/gtest.h>
#include <stdlib.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bffs/error.hpp"
#include "bffs/mock_backend.hpp"

namespace bffs {
namespace {

RunReport small_mock_report(std::uint64_t seed = 5) {
  MockBackend mock("/bench", {}, {}, seed);
  RunMetrics metrics;
  RunReport report;
  report.identity.label = "unit";
  report.identity.backend_kind = "mock";
  report.identity.capabilities = mock.capabilities();
  report.identity.config = {{"backend", "mock"}, {"seed", std::to_string(seed)}};
  report.schedule = plan_schedule(3, 1, 7, "/bench");
  report.distribution = FileSizeDistribution{.seed = seed};
  report.identity.run_start_us = mock.wall_us();

  StorageSnapshot before;
  mock.storage_stats(before);
  report.write = run_create(report.schedule, report.distribution, mock, metrics);
  report.storage = capture_delta(mock, before);
  report.read = run_read(report.schedule, mock, metrics);
  report.write_tracker = metrics.write_tracker;
  report.read_tracker = metrics.read_tracker;
  report.write_hist = metrics.write_hist;
  report.read_hist = metrics.read_hist;
  report.has_write = report.has_read = true;
  report.identity.run_end_us = mock.wall_us();
  report.derived = compute_derived(report.write, report.read, report.storage,
                                   4096, mock.mono_us());
  return report;
}

TEST(ReportJson, RoundTripsExactly) {
  const RunReport report = small_mock_report();
  const std::string text = serialize_json(report);
  const RunReport parsed = parse_json(text);
  EXPECT_EQ(parsed, report);
  EXPECT_EQ(serialize_json(parsed), text);
}

TEST(ReportJson, IdenticalRunsSerializeIdentically) {
  const std::string a = serialize_json(small_mock_report(9));
  const std::string b = serialize_json(small_mock_report(9));
  EXPECT_EQ(a, b);
  const std::string c = serialize_json(small_mock_report(10));
  EXPECT_NE(a, c);
}

TEST(ReportJson, EmptyReportIsValid) {
  RunReport empty;
  const std::string text = serialize_json(empty);
  const RunReport parsed = parse_json(text);
  EXPECT_EQ(parsed, empty);
  EXPECT_NE(text.find("\"schema_version\": 1"), std::string::npos);
}

TEST(ReportJson, RejectsGarbageAndWrongSchema) {
  EXPECT_THROW(parse_json("{not json"), Error);
  EXPECT_THROW(parse_json("{\"schema_version\": 999}"), Error);
  try {
    parse_json("[]");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse_error);
  }
}

TEST(EmitJson, WritesFileAndRemovesPartialOnFailure) {
  char tmpl[] = "/tmp/bffs_report_XXXXXX";
  ASSERT_NE(::mkdtemp(tmpl), nullptr);
  const std::string dir = tmpl;
  const RunReport report = small_mock_report();

  const std::string path = dir + "/report.json";
  emit_json(report, path);
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(parse_json(buf.str()), report);

  const std::string bad = dir + "/no-such-subdir/report.json";
  EXPECT_THROW(emit_json(report, bad), Error);
  EXPECT_FALSE(std::filesystem::exists(bad + ".tmp"));
  std::filesystem::remove_all(dir);
}

TEST(EmitTable, RendersBaselineFixtureCells) {
  RunReport report;
  report.identity.label = "ext4_10m";
  report.identity.backend_kind = "real";
  report.identity.capabilities = {true, 4096};
  report.schedule = plan_schedule(100, 1, 100'000, "/mnt/t");
  report.has_write = report.has_read = true;
  report.write.files_written = 10'000'000;
  report.write.bytes_written = 54'990'000'000ull;
  report.write.folder_create_total_us = 20'000;
  report.write.file_create_total_us = 253'000'000;
  report.write.file_write_total_us = 157'000'000;
  report.read.files_read = 10'000'000;
  report.read.bytes_read = 54'990'000'000ull;
  report.read.file_open_total_us = 23'000'000;
  report.read.file_read_total_us = 108'000'000;
  report.storage.inodes_used = 10'000'200;
  report.storage.blocks_used = 19'270'745;
  report.storage.bytes_used = 19'270'745ll * 4096;
  report.write_tracker = LatencyTracker{10'000'000, 157'000'000, 5, 2'530'000};
  report.read_tracker = LatencyTracker{10'000'000, 108'000'000, 2, 4'120'000};
  report.derived = compute_derived(report.write, report.read, report.storage,
                                   4096, 683'660'000);

  const std::string table = emit_table(report);
  EXPECT_NE(table.find("ext4_10m"), std::string::npos);
  EXPECT_NE(table.find("  63  "), std::string::npos);    // FWs cell
  EXPECT_NE(table.find("30%"), std::string::npos);       // DSUO cell
  EXPECT_NE(table.find("10000200"), std::string::npos);  // inode cell
  EXPECT_NEAR(report.derived.wth_bytes_per_us, 350.25, 0.01);
  EXPECT_NE(table.find("  350  "), std::string::npos);   // WTh as computed
  EXPECT_NE(table.find("54.99"), std::string::npos);     // TByW in GB
  EXPECT_NE(table.find("78.93"), std::string::npos);     // DSU in GB
  EXPECT_NE(table.find("683.66"), std::string::npos);    // TRT_run seconds
  EXPECT_NE(table.find("0 failed checksums"), std::string::npos);
}

TEST(EmitTable, ZeroRunRendersZeros) {
  RunReport empty;
  const std::string table = emit_table(empty);
  EXPECT_NE(table.find("0.00"), std::string::npos);
  EXPECT_NE(table.find("0%"), std::string::npos);
}

TEST(EmitTable, LargeBlockTargetsShowTheirBlockSize) {
  RunReport report;
  report.identity.capabilities = {true, 131'072};
  const std::string table = emit_table(report);
  EXPECT_NE(table.find("131072"), std::string::npos);
}

TEST(EmitPlotdata, CsvMassAndDeterminism) {
  char tmpl[] = "/tmp/bffs_plot_XXXXXX";
  ASSERT_NE(::mkdtemp(tmpl), nullptr);
  const std::string dir = tmpl;
  const RunReport report = small_mock_report(4);
  emit_plotdata(report, dir + "/plots");

  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string hist = slurp(dir + "/plots/hist_write.csv");
  ASSERT_FALSE(hist.empty());

  // Histogram mass: the count column sums to the files in the run.
  std::uint64_t sum = 0;
  std::stringstream lines(hist);
  std::string line;
  std::getline(lines, line);  // header
  EXPECT_EQ(line, "bucket_low_us,bucket_high_us,count");
  while (std::getline(lines, line)) {
    sum += std::stoull(line.substr(line.find_last_of(',') + 1));
  }
  EXPECT_EQ(sum, report.write.files_written);

  const std::string trend = slurp(dir + "/plots/trend_write.csv");
  std::uint64_t rows = 0;
  std::stringstream tlines(trend);
  std::getline(tlines, line);
  EXPECT_EQ(line, "sample_ordinal,folder_ordinal,throughput_files_per_s");
  while (std::getline(tlines, line)) ++rows;
  EXPECT_LE(rows, 20u);
  EXPECT_EQ(rows, report.write.per_folder_series.size());

  // Deterministic bytes across emissions.
  emit_plotdata(report, dir + "/plots2");
  EXPECT_EQ(hist, slurp(dir + "/plots2/hist_write.csv"));
  EXPECT_EQ(trend, slurp(dir + "/plots2/trend_write.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir + "/plots/hist_read.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir + "/plots/trend_read.csv"));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace bffs

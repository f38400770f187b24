#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "nonsense/dataset_io.hpp"
#include "nonsense/generate.hpp"
#include "nonsense/pipeline.hpp"
#include "support/tempdir.hpp"

using namespace nonsense;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Random text drawn from ASCII, escapes and multi-byte UTF-8.
std::string random_text(Rng& rng) {
  static const char* pieces[] = {"a", "Z", "7", " ", "\"", "\\", "\n", "\t", "/", "{", "}",
                                 "\xc3\xa9", "\xe2\x82\xac", "\xf0\x9f\x98\x80", "\xe4\xb8\xad", "\x01"};
  std::string out;
  const std::size_t n = 1 + rng.index(40);
  for (std::size_t i = 0; i < n; ++i) out += pieces[rng.index(std::size(pieces))];
  return out;
}

DatasetRecord random_record(Rng& rng, std::size_t i) {
  DatasetRecord r;
  r.id = "rec-" + std::to_string(i) + random_text(rng);
  r.task = random_text(rng);
  r.source = random_text(rng);
  r.target = random_text(rng);
  r.meta["n"] = rng.index(1000);
  r.meta["note"] = random_text(rng);
  r.meta["list"] = Json::array({rng.unit(), -static_cast<std::int64_t>(rng.index(5)), true});
  return r;
}

}  // namespace

TEST(DatasetIo, FieldOrder) {
  DatasetRecord r{"x-1", "sr", "aaa .", "baa .", Json{{"k", 1}}};
  EXPECT_EQ(serialize_record(r), R"({"id":"x-1","task":"sr","source":"aaa .","target":"baa .","meta":{"k":1}})");
}

TEST(DatasetIo, RoundTripArbitraryRecords) {
  Rng rng(42);
  std::vector<DatasetRecord> records;
  for (std::size_t i = 0; i < 500; ++i) records.push_back(random_record(rng, i));
  std::stringstream buf;
  write_records(buf, records);
  const std::string bytes = buf.str();
  const auto back = read_records(buf);
  ASSERT_EQ(back, records);
  std::stringstream again;
  write_records(again, back);
  EXPECT_EQ(again.str(), bytes);
}

TEST(DatasetIo, EnsembleRecordsRoundTripByteEqual) {
  testkit::TempDir dir("io-ensemble");
  TaskGenConfig cfg;
  cfg.seed = 3;
  const TaskGenerator gen(cfg, default_scheme());
  std::vector<DatasetRecord> records;
  for (std::uint64_t i = 0; i < 1000; ++i) records.push_back(to_record(gen(i)));
  write_dataset(records, dir.file("a.jsonl"));
  const auto back = read_dataset(dir.file("a.jsonl"));
  ASSERT_EQ(back, records);
  write_dataset(back, dir.file("b.jsonl"));
  EXPECT_EQ(slurp(dir.file("a.jsonl")), slurp(dir.file("b.jsonl")));
}

TEST(DatasetIo, DuplicateIds) {
  DatasetRecord r{"same", "t", "aaa", "baa", Json::object()};
  testkit::TempDir dir("io-dup");
  EXPECT_THROW(write_dataset({r, r}, dir.file("d.jsonl")), ValidationError);
  std::stringstream buf;
  write_records(buf, {r, r});
  EXPECT_THROW(read_records(buf), ValidationError);
}

TEST(DatasetIo, EmptyFile) {
  testkit::TempDir dir("io-empty");
  std::ofstream(dir.file("e.jsonl")).close();
  EXPECT_TRUE(read_dataset(dir.file("e.jsonl")).empty());
  EXPECT_EQ(dataset_stats(dir.file("e.jsonl")).records, 0u);
}

TEST(DatasetIo, ParseErrorsReportLine) {
  std::stringstream buf;
  buf << serialize_record({"a", "t", "s", "t", {}}) << "\n\n{not json}\n";
  try {
    read_records(buf);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_record(R"({"id":"a","task":"t","source":"s"})", 1), ParseError);
  EXPECT_THROW(parse_record(R"({"id":"a","task":"t","source":"","target":"x"})", 1), ParseError);
  EXPECT_THROW(parse_record(R"({"id":"a","task":"t","source":"s","target":"x","meta":[]})", 1), ParseError);
  EXPECT_THROW(parse_record("[1,2]", 1), ParseError);
}

TEST(DatasetIo, EmptyFieldsNotWritten) {
  EXPECT_THROW(serialize_record({"a", "t", "", "x", {}}), ValidationError);
}

TEST(DatasetIo, MissingFileIsIoError) {
  EXPECT_THROW(read_dataset("/nonexistent/x.jsonl"), IoError);
  EXPECT_THROW(dataset_stats("/nonexistent/x.jsonl"), IoError);
}

TEST(Stats, NearestRank) {
  std::vector<std::size_t> v(20);
  for (std::size_t i = 0; i < 20; ++i) v[i] = i + 1;
  const Percentiles p = percentiles(v);
  EXPECT_EQ(p.p5, 1u);
  EXPECT_EQ(p.p50, 10u);
  EXPECT_EQ(p.p95, 19u);
  const Percentiles one = percentiles({7});
  EXPECT_EQ(one.p5, 7u);
  EXPECT_EQ(one.p95, 7u);
}

TEST(Stats, ConstantLengths) {
  std::stringstream buf;
  for (int i = 0; i < 100; ++i) {
    buf << serialize_record({"r" + std::to_string(i), "t", "a b", "a b c d e f g h i j", {}}) << "\n";
  }
  const StatsReport r = dataset_stats(buf);
  EXPECT_EQ(r.records, 100u);
  EXPECT_EQ(r.target_tokens.p5, 10u);
  EXPECT_EQ(r.target_tokens.p50, 10u);
  EXPECT_EQ(r.target_tokens.p95, 10u);
  EXPECT_EQ(r.task_histogram.at("t"), 100u);
}

TEST(Stats, EnsembleHistogramCoversEligibleKinds) {
  TaskGenConfig cfg;
  cfg.seed = 4;
  const TaskGenerator gen(cfg, default_scheme());
  std::stringstream buf;
  generate_lines(buf, 2000, 1, gen);
  const StatsReport r = dataset_stats(buf);
  EXPECT_EQ(r.records, 2000u);
  EXPECT_EQ(r.kind_histogram.size(), 16u);
  std::size_t total = 0;
  for (const auto& [k, c] : r.kind_histogram) total += c;
  EXPECT_EQ(total, 6000u);
}

TEST(Stats, StepSourceMedianInBudgetWindow) {
  const StepGenerator gen({5, StepKind::MDG});
  std::stringstream buf;
  generate_lines(buf, 300, 1, gen);
  const StatsReport r = dataset_stats(buf);
  EXPECT_GE(r.source_tokens.p50, 512u);
  EXPECT_LE(r.source_tokens.p50, 527u);
  EXPECT_EQ(r.kind_histogram.at("mdg"), 300u);
}

TEST(Stats, JsonAndText) {
  std::stringstream buf;
  buf << serialize_record({"r", "sr", "a b c", "d", {}}) << "\n";
  const StatsReport r = dataset_stats(buf);
  const Json j = to_json(r);
  EXPECT_EQ(j["records"], 1);
  EXPECT_EQ(j["source_tokens"]["p50"], 3);
  EXPECT_NE(format_stats(r).find("records: 1"), std::string::npos);
}

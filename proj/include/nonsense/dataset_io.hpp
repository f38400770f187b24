#pragma once

// JSON-lines datasets: one object per line with fields in the fixed order
// id, task, source, target, meta.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "nonsense/document.hpp"
#include "nonsense/errors.hpp"
#include "nonsense/task_instance.hpp"

namespace nonsense {

struct DatasetRecord {
  std::string id;
  std::string task;
  std::string source;
  std::string target;
  Json meta = Json::object();

  friend bool operator==(const DatasetRecord& a, const DatasetRecord& b) {
    return a.id == b.id && a.task == b.task && a.source == b.source && a.target == b.target && a.meta == b.meta;
  }
};

inline DatasetRecord to_record(const TaskInstance& inst) {
  return {inst.id, inst.task, join_tokens(inst.source), join_tokens(inst.target), inst.meta};
}

inline TaskInstance to_instance(const DatasetRecord& rec) {
  return {rec.id, rec.task, split_tokens(rec.source), split_tokens(rec.target), rec.meta};
}

inline std::string serialize_record(const DatasetRecord& rec) {
  if (rec.source.empty() || rec.target.empty()) throw ValidationError("record '" + rec.id + "' has empty source or target");
  Json j;
  j["id"] = rec.id;
  j["task"] = rec.task;
  j["source"] = rec.source;
  j["target"] = rec.target;
  j["meta"] = rec.meta.is_null() ? Json::object() : rec.meta;
  return j.dump();
}

inline DatasetRecord parse_record(const std::string& line, std::size_t line_no) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError(line_no, "record is not a JSON object");
  DatasetRecord rec;
  auto text = [&](const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) throw ParseError(line_no, std::string("missing string field '") + key + "'");
    return it->get<std::string>();
  };
  rec.id = text("id");
  rec.task = text("task");
  rec.source = text("source");
  rec.target = text("target");
  if (auto it = j.find("meta"); it != j.end()) {
    if (!it->is_object()) throw ParseError(line_no, "'meta' is not an object");
    rec.meta = *it;
  }
  if (rec.source.empty() || rec.target.empty()) throw ParseError(line_no, "empty source or target");
  return rec;
}

inline void write_records(std::ostream& out, const std::vector<DatasetRecord>& records) {
  for (const auto& r : records) out << serialize_record(r) << '\n';
}

inline void validate_unique_ids(const std::vector<DatasetRecord>& records) {
  std::set<std::string> ids;
  for (const auto& r : records) {
    if (!ids.insert(r.id).second) throw ValidationError("duplicate record id '" + r.id + "'");
  }
}

inline void write_dataset(const std::vector<DatasetRecord>& records, const std::string& path) {
  validate_unique_ids(records);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_records(out, records);
  if (!out) throw IoError("write to '" + path + "' failed");
}

// Calls fn(record, line_number) for each non-blank line.
template <typename Fn>
void for_each_record(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    fn(parse_record(line, line_no), line_no);
  }
}

inline std::vector<DatasetRecord> read_records(std::istream& in) {
  std::vector<DatasetRecord> out;
  std::set<std::string> ids;
  for_each_record(in, [&](DatasetRecord rec, std::size_t line_no) {
    if (!ids.insert(rec.id).second) throw ValidationError("line " + std::to_string(line_no) + ": duplicate id '" + rec.id + "'");
    out.push_back(std::move(rec));
  });
  return out;
}

inline std::vector<DatasetRecord> read_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_records(in);
}

// --- statistics -----------------------------------------------------------

struct Percentiles {
  std::size_t p5 = 0, p50 = 0, p95 = 0;
};

// Nearest-rank percentile of a sorted sample: element ceil(p/100 * N).
inline std::size_t nearest_rank(const std::vector<std::size_t>& sorted, double p) {
  if (sorted.empty()) return 0;
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(sorted.size())));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

inline Percentiles percentiles(std::vector<std::size_t> values) {
  std::sort(values.begin(), values.end());
  return {nearest_rank(values, 5), nearest_rank(values, 50), nearest_rank(values, 95)};
}

struct StatsReport {
  std::size_t records = 0;
  Percentiles source_tokens;
  Percentiles target_tokens;
  std::map<std::string, std::size_t> task_histogram;  // by record task tag
  std::map<std::string, std::size_t> kind_histogram;  // elementary kinds inside records
};

inline StatsReport dataset_stats(std::istream& in) {
  StatsReport report;
  std::vector<std::size_t> src, tgt;
  std::set<std::string> ids;
  for_each_record(in, [&](const DatasetRecord& rec, std::size_t line_no) {
    if (!ids.insert(rec.id).second) throw ValidationError("line " + std::to_string(line_no) + ": duplicate id '" + rec.id + "'");
    ++report.records;
    src.push_back(split_tokens(rec.source).size());
    tgt.push_back(split_tokens(rec.target).size());
    ++report.task_histogram[rec.task];
    if (auto it = rec.meta.find("records"); it != rec.meta.end() && it->is_array()) {
      for (const auto& r : *it) {
        if (r.is_object() && r.contains("kind") && r["kind"].is_string()) ++report.kind_histogram[r["kind"].get<std::string>()];
      }
    } else if (auto k = rec.meta.find("kind"); k != rec.meta.end() && k->is_string()) {
      ++report.kind_histogram[k->get<std::string>()];
    }
  });
  report.source_tokens = percentiles(std::move(src));
  report.target_tokens = percentiles(std::move(tgt));
  return report;
}

inline StatsReport dataset_stats(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return dataset_stats(in);
}

inline Json to_json(const StatsReport& r) {
  auto pct = [](const Percentiles& p) { return Json{{"p5", p.p5}, {"p50", p.p50}, {"p95", p.p95}}; };
  Json j;
  j["records"] = r.records;
  j["source_tokens"] = pct(r.source_tokens);
  j["target_tokens"] = pct(r.target_tokens);
  j["task_histogram"] = Json::object();
  for (const auto& [k, v] : r.task_histogram) j["task_histogram"][k] = v;
  j["kind_histogram"] = Json::object();
  for (const auto& [k, v] : r.kind_histogram) j["kind_histogram"][k] = v;
  return j;
}

inline std::string format_stats(const StatsReport& r) {
  std::string out = "records: " + std::to_string(r.records) + "\n";
  auto pct = [](const char* name, const Percentiles& p) {
    return std::string(name) + " tokens p5/p50/p95: " + std::to_string(p.p5) + " / " + std::to_string(p.p50) + " / " +
           std::to_string(p.p95) + "\n";
  };
  out += pct("source", r.source_tokens);
  out += pct("target", r.target_tokens);
  out += "tasks:\n";
  for (const auto& [k, v] : r.task_histogram) out += "  " + k + " " + std::to_string(v) + "\n";
  if (!r.kind_histogram.empty()) {
    out += "kinds:\n";
    for (const auto& [k, v] : r.kind_histogram) out += "  " + k + " " + std::to_string(v) + "\n";
  }
  return out;
}

}  // namespace nonsense

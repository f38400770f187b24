#pragma once

#include <string>
#include <vector>

#include "nonsense/elementary_tasks.hpp"
#include "nonsense/keyword_scheme.hpp"
#include "nonsense/step_tasks.hpp"
#include "nonsense/task_instance.hpp"

namespace nonsense {

namespace detail {

// True iff target[pos..] splits into consecutive segments accepted by
// records[i..] in order.
inline bool segments_match(const std::vector<std::vector<Tokens>>& accepted, std::size_t i, const Tokens& target,
                           std::size_t pos) {
  if (i == accepted.size()) return pos == target.size();
  for (const auto& cand : accepted[i]) {
    if (pos + cand.size() > target.size()) continue;
    if (!std::equal(cand.begin(), cand.end(), target.begin() + static_cast<std::ptrdiff_t>(pos))) continue;
    if (segments_match(accepted, i + 1, target, pos + cand.size())) return true;
  }
  return false;
}

inline std::string check_task_instance(const TaskInstance& inst, const KeywordScheme& scheme) {
  const Json& meta = inst.meta;
  if (!meta.contains("records") || !meta.contains("sentence_lengths")) return "missing task records";
  std::vector<TaskRecord> records;
  Document doc;
  try {
    for (const auto& j : meta["records"]) records.push_back(record_from_json(j));
    doc = document_from_tokens(inst.source, meta["sentence_lengths"].get<std::vector<std::size_t>>());
  } catch (const ConsistencyError& e) {
    return e.what();
  } catch (const Json::exception& e) {
    return std::string("malformed metadata: ") + e.what();
  }
  if (records.empty()) return "no task records";
  std::vector<std::vector<Tokens>> accepted;
  for (const auto& r : records) {
    accepted.push_back(acceptance_set(r, doc, scheme));
    if (accepted.back().empty()) return std::string(to_string(r.kind)) + ": trigger material not found in source";
  }
  if (!segments_match(accepted, 0, inst.target, 0)) return "target not accepted by the task oracles";
  return {};
}

}  // namespace detail

// Replays the oracle that matches the instance's family. Returns an empty
// string when the instance verifies, otherwise the reason it does not.
inline std::string check_instance(const TaskInstance& inst, const KeywordScheme& scheme) {
  if (!inst.meta.is_object() || !inst.meta.contains("family")) return "missing metadata";
  const auto& family = inst.meta["family"];
  if (!family.is_string()) return "missing metadata";
  const std::string f = family.get<std::string>();
  try {
    if (f == "step") return check_step_instance(inst);
    if (f == "elementary" || f == "ensemble") return detail::check_task_instance(inst, scheme);
  } catch (const Json::exception& e) {
    return std::string("malformed metadata: ") + e.what();
  }
  return "unknown task family '" + f + "'";
}

inline bool verify_instance(const TaskInstance& inst, const KeywordScheme& scheme) {
  return check_instance(inst, scheme).empty();
}

}  // namespace nonsense

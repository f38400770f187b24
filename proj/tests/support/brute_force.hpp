#pragma once

// Independent answer for the numeric kinds: reads every decimal integer token
// in the source, with no reference to trigger tokens or task records. Valid
// for standalone instances over nonsense documents, where planted numbers are
// the only integers present.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nonsense/elementary_tasks.hpp"

namespace nonsense::testkit {

inline bool all_digits(const std::string& t) {
  if (t.empty()) return false;
  for (char c : t) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

inline std::vector<long> integers_in(const Tokens& source) {
  std::vector<long> out;
  for (const auto& t : source) {
    if (all_digits(t)) out.push_back(std::stol(t));
  }
  return out;
}

inline bool is_numeric_kind(ElementaryKind k) {
  return k == ElementaryKind::CompareNumbers || k == ElementaryKind::SumOfNumbers ||
         k == ElementaryKind::ThresholdNumber || k == ElementaryKind::LargestNumber;
}

inline std::optional<Tokens> numeric_brute_force(ElementaryKind kind, const Tokens& source, const KeywordScheme& sc) {
  const auto xs = integers_in(source);
  if (xs.empty()) return std::nullopt;
  long answer = 0;
  switch (kind) {
    case ElementaryKind::CompareNumbers:
      if (xs.size() != 2 || xs[0] == xs[1]) return std::nullopt;
      answer = xs[0] > xs[1] ? xs[0] : xs[1];
      break;
    case ElementaryKind::SumOfNumbers:
      for (long x : xs) answer += x;
      break;
    case ElementaryKind::ThresholdNumber:
      if (xs.size() != 1) return std::nullopt;
      return Tokens{xs[0] >= sc.threshold ? sc.threshold_high : sc.threshold_low, "."};
    case ElementaryKind::LargestNumber:
      answer = *std::max_element(xs.begin(), xs.end());
      break;
    default:
      return std::nullopt;
  }
  return Tokens{std::to_string(answer), "."};
}

}  // namespace nonsense::testkit

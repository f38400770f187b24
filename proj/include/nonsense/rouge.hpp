#pragma once

// ROUGE-1, ROUGE-2 and ROUGE-L over whitespace tokens.
//
// Conventions: n-gram matches are clipped multiset intersections; F uses
// beta = 1 for every variant; an empty candidate or reference (or one too
// short to hold an n-gram) scores P = R = F1 = 0. Corpus scores are the
// arithmetic mean of per-pair values, accumulated in input order.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nonsense/document.hpp"
#include "nonsense/errors.hpp"
#include "nonsense/task_instance.hpp"

namespace nonsense {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

inline RougeScore make_score(std::size_t matches, std::size_t candidate_total, std::size_t reference_total) {
  RougeScore s;
  if (candidate_total == 0 || reference_total == 0) return s;
  s.precision = static_cast<double>(matches) / static_cast<double>(candidate_total);
  s.recall = static_cast<double>(matches) / static_cast<double>(reference_total);
  if (s.precision + s.recall > 0.0) s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

struct RougeOptions {
  bool lowercase = true;
  // Real-text mode: non-alphanumeric ASCII characters become separators.
  bool strip_punctuation = false;
};

inline Tokens rouge_tokenize(std::string_view text, const RougeOptions& opts = {}) {
  std::string norm(text);
  for (char& c : norm) {
    const auto u = static_cast<unsigned char>(c);
    if (opts.lowercase && u < 0x80) c = static_cast<char>(std::tolower(u));
    if (opts.strip_punctuation && u < 0x80 && !std::isalnum(u)) c = ' ';
  }
  return split_tokens(norm);
}

inline RougeScore rouge_n(std::span<const Token> candidate, std::span<const Token> reference, std::size_t n) {
  if (n == 0) throw InvalidInput("rouge_n: n must be positive");
  auto grams = [n](std::span<const Token> seq) {
    std::map<std::vector<std::string_view>, std::size_t> counts;
    for (std::size_t i = 0; i + n <= seq.size(); ++i) {
      std::vector<std::string_view> g;
      g.reserve(n);
      for (std::size_t k = 0; k < n; ++k) g.emplace_back(seq[i + k]);
      ++counts[std::move(g)];
    }
    return counts;
  };
  const auto cand = grams(candidate);
  const auto ref = grams(reference);
  std::size_t matches = 0;
  for (const auto& [g, c] : cand) {
    if (auto it = ref.find(g); it != ref.end()) matches += std::min(c, it->second);
  }
  const std::size_t cand_total = candidate.size() >= n ? candidate.size() - n + 1 : 0;
  const std::size_t ref_total = reference.size() >= n ? reference.size() - n + 1 : 0;
  return make_score(matches, cand_total, ref_total);
}

inline std::size_t lcs_length(std::span<const Token> a, std::span<const Token> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

inline RougeScore rouge_l(std::span<const Token> candidate, std::span<const Token> reference) {
  return make_score(lcs_length(candidate, reference), candidate.size(), reference.size());
}

struct RougeTriple {
  RougeScore r1, r2, rl;
};

inline RougeTriple score_pair(std::span<const Token> candidate, std::span<const Token> reference) {
  return {rouge_n(candidate, reference, 1), rouge_n(candidate, reference, 2), rouge_l(candidate, reference)};
}

struct RougeReport {
  std::vector<RougeTriple> pairs;
  RougeTriple mean;
};

inline RougeReport corpus_rouge(std::span<const std::pair<Tokens, Tokens>> pairs) {
  if (pairs.empty()) throw InvalidInput("corpus_rouge: no pairs");
  RougeReport report;
  report.pairs.reserve(pairs.size());
  RougeTriple sum;
  auto add = [](RougeScore& acc, const RougeScore& s) {
    acc.precision += s.precision;
    acc.recall += s.recall;
    acc.f1 += s.f1;
  };
  for (const auto& [cand, ref] : pairs) {
    report.pairs.push_back(score_pair(cand, ref));
    add(sum.r1, report.pairs.back().r1);
    add(sum.r2, report.pairs.back().r2);
    add(sum.rl, report.pairs.back().rl);
  }
  const auto n = static_cast<double>(pairs.size());
  for (RougeScore* s : {&sum.r1, &sum.r2, &sum.rl}) {
    s->precision /= n;
    s->recall /= n;
    s->f1 /= n;
  }
  report.mean = sum;
  return report;
}

inline Json to_json(const RougeScore& s) { return Json{{"p", s.precision}, {"r", s.recall}, {"f1", s.f1}}; }

inline Json to_json(const RougeTriple& t) { return Json{{"r1", to_json(t.r1)}, {"r2", to_json(t.r2)}, {"rl", to_json(t.rl)}}; }

inline Json to_json(const RougeReport& report, bool per_pair) {
  Json j = to_json(report.mean);
  j["pairs"] = report.pairs.size();
  j["beta"] = 1.0;
  j["aggregation"] = "mean of per-pair scores";
  if (per_pair) {
    Json arr = Json::array();
    for (const auto& p : report.pairs) arr.push_back(to_json(p));
    j["per_pair"] = std::move(arr);
  }
  return j;
}

inline std::string format_rouge_table(const RougeReport& report) {
  std::string out = "metric   precision   recall      f1\n";
  char line[96];
  const std::pair<const char*, const RougeScore*> rows[] = {
      {"rouge-1", &report.mean.r1}, {"rouge-2", &report.mean.r2}, {"rouge-l", &report.mean.rl}};
  for (const auto& [name, s] : rows) {
    std::snprintf(line, sizeof line, "%-8s %9.4f %9.4f %9.4f\n", name, s->precision, s->recall, s->f1);
    out += line;
  }
  std::snprintf(line, sizeof line, "pairs: %zu\n", report.pairs.size());
  out += line;
  return out;
}

}  // namespace nonsense

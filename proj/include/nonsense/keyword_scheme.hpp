#pragma once

// Reserved trigger and answer tokens planted into documents by the
// elementary tasks.
//
// Scheme files are INI-like: `[section]` headers, `key = value` lines, values
// are whitespace-separated token lists, and lines starting with `#` or `;`
// are comments. Sections:
//
//   [markers]        bullet quote_open quote_close cutoff clause_separator
//                    yes no threshold_high threshold_low
//   [keywords]       check majority copy_one copy_in_order copy_sorted
//                    copy_shuffled join
//   [numeric]        compare sum threshold largest   (trigger tokens)
//                    min max threshold_value         (integers)
//   [sentiment]      <label> = <members>   exactly two classes
//   [replace_classes] <label> = <members>
//   [topic_classes]  <label> = <members>
//   [topic_headers]  <label> = <header token>
//   [synonyms]       <keyword> = <synonyms>
//
// Keys absent from a file keep their default; a class or synonym section that
// appears replaces the default list entirely.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nonsense/document.hpp"
#include "nonsense/errors.hpp"
#include "nonsense/vocabulary.hpp"

namespace nonsense {

struct KeywordClass {
  Token label;
  Tokens members;
  friend bool operator==(const KeywordClass&, const KeywordClass&) = default;
};

struct SynonymEntry {
  Token keyword;
  Tokens synonyms;
  friend bool operator==(const SynonymEntry&, const SynonymEntry&) = default;
};

struct KeywordScheme {
  Token bullet = "*";
  Token quote_open = "\"";
  Token quote_close = "\"";
  Token cutoff = "cutoff";
  Token clause_separator = ",";
  Token yes = "YES";
  Token no = "NO";
  Token threshold_high = "above";
  Token threshold_low = "below";

  Token check_keyword;
  Tokens majority_keywords;
  Tokens copy_one_keywords;
  Tokens in_order_keywords;
  Tokens sorted_keywords;
  Tokens shuffled_keywords;
  Token join_keyword;

  Token compare_trigger = "num1";
  Token sum_trigger = "num2";
  Token threshold_trigger = "num3";
  Token largest_trigger = "num4";
  std::int64_t number_min = 0;
  std::int64_t number_max = 100;
  std::int64_t threshold = 50;

  std::vector<KeywordClass> sentiment;
  std::vector<KeywordClass> replace_classes;
  std::vector<KeywordClass> topic_classes;
  std::map<Token, Token> topic_headers;
  std::vector<SynonymEntry> synonyms;

  friend bool operator==(const KeywordScheme&, const KeywordScheme&) = default;
};

namespace detail {

inline Tokens numbered(std::string_view stem, int first, int last) {
  Tokens out;
  for (int i = first; i <= last; ++i) out.push_back(std::string(stem) + std::to_string(i));
  return out;
}

}  // namespace detail

// keyword1..keyword42 split into per-task pools, meaningless class members and
// synonyms.
inline KeywordScheme default_scheme() {
  using detail::numbered;
  KeywordScheme s;
  s.check_keyword = "keyword1";
  s.copy_one_keywords = numbered("keyword", 2, 7);
  s.in_order_keywords = numbered("keyword", 8, 13);
  s.sorted_keywords = numbered("keyword", 14, 19);
  s.shuffled_keywords = numbered("keyword", 20, 25);
  s.majority_keywords = numbered("keyword", 26, 41);
  s.join_keyword = "keyword42";
  s.sentiment = {{"positive", numbered("adjective", 1, 5)}, {"negative", numbered("adjective", 6, 10)}};
  s.replace_classes = {{"category1", numbered("item", 1, 4)},
                       {"category2", numbered("item", 5, 8)},
                       {"category3", numbered("item", 9, 12)}};
  s.topic_classes = {{"topic1", numbered("subject", 1, 4)},
                     {"topic2", numbered("subject", 5, 8)},
                     {"topic3", numbered("subject", 9, 12)}};
  s.topic_headers = {{"topic1", "section1"}, {"topic2", "section2"}, {"topic3", "section3"}};
  for (int i = 1; i <= 5; ++i) {
    const std::string id = std::to_string(i);
    s.synonyms.push_back({"src" + id, {"tgt" + id + "_1", "tgt" + id + "_2", "tgt" + id + "_3"}});
  }
  return s;
}

inline bool is_integer_token(std::string_view t) noexcept {
  if (t.empty()) return false;
  std::size_t i = (t[0] == '-' && t.size() > 1) ? 1 : 0;
  for (; i < t.size(); ++i) {
    if (t[i] < '0' || t[i] > '9') return false;
  }
  return true;
}

// Every reserved token of the scheme, labelled by role.
inline std::vector<std::pair<std::string, Token>> scheme_tokens(const KeywordScheme& s) {
  std::vector<std::pair<std::string, Token>> out;
  auto add = [&](std::string role, const Token& t) { out.emplace_back(std::move(role), t); };
  auto add_all = [&](const std::string& role, const Tokens& ts) {
    for (const auto& t : ts) add(role, t);
  };
  add("bullet", s.bullet);
  add("quote_open", s.quote_open);
  if (s.quote_close != s.quote_open) add("quote_close", s.quote_close);
  add("cutoff", s.cutoff);
  add("clause_separator", s.clause_separator);
  add("yes", s.yes);
  add("no", s.no);
  add("threshold_high", s.threshold_high);
  add("threshold_low", s.threshold_low);
  add("check", s.check_keyword);
  add_all("majority", s.majority_keywords);
  add_all("copy_one", s.copy_one_keywords);
  add_all("copy_in_order", s.in_order_keywords);
  add_all("copy_sorted", s.sorted_keywords);
  add_all("copy_shuffled", s.shuffled_keywords);
  add("join", s.join_keyword);
  add("compare", s.compare_trigger);
  add("sum", s.sum_trigger);
  add("threshold", s.threshold_trigger);
  add("largest", s.largest_trigger);
  for (const auto& c : s.sentiment) {
    add("sentiment label", c.label);
    add_all("sentiment member", c.members);
  }
  for (const auto& c : s.replace_classes) {
    add("replace label", c.label);
    add_all("replace member", c.members);
  }
  for (const auto& c : s.topic_classes) {
    add("topic label", c.label);
    add_all("topic member", c.members);
  }
  for (const auto& [label, header] : s.topic_headers) add("topic header", header);
  for (const auto& e : s.synonyms) {
    add("synonym keyword", e.keyword);
    add_all("synonym", e.synonyms);
  }
  return out;
}

// Throws ConfigError unless every reserved token is well formed, unique and
// absent from the vocabulary.
inline void validate_scheme(const KeywordScheme& s, const Vocabulary& vocab) {
  auto fail = [](const std::string& msg) { throw ConfigError("keyword scheme: " + msg); };
  std::map<Token, std::string> seen;
  for (const auto& [role, tok] : scheme_tokens(s)) {
    if (tok.empty()) fail(role + " token is empty");
    if (std::any_of(tok.begin(), tok.end(), is_space)) fail(role + " token '" + tok + "' contains whitespace");
    if (tok == kPeriod) fail(role + " token may not be the period");
    if (is_integer_token(tok)) fail(role + " token '" + tok + "' is numeric");
    if (vocab.contains(tok)) fail(role + " token '" + tok + "' is a vocabulary word");
    auto [it, inserted] = seen.emplace(tok, role);
    if (!inserted) fail("token '" + tok + "' used as both " + it->second + " and " + role);
  }
  if (s.majority_keywords.size() < 2) fail("majority needs at least 2 keywords");
  if (s.copy_one_keywords.empty()) fail("copy_one needs at least 1 keyword");
  if (s.in_order_keywords.size() < 2 || s.sorted_keywords.size() < 2 || s.shuffled_keywords.size() < 2) {
    fail("multi-sentence copy pools need at least 2 keywords each");
  }
  if (s.sentiment.size() != 2) fail("sentiment needs exactly 2 classes");
  auto check_classes = [&](const std::vector<KeywordClass>& classes, const std::string& what) {
    if (classes.empty()) fail(what + " needs at least one class");
    for (const auto& c : classes) {
      if (c.members.empty()) fail(what + " class '" + c.label + "' has no members");
    }
  };
  check_classes(s.sentiment, "sentiment");
  check_classes(s.replace_classes, "replace_classes");
  check_classes(s.topic_classes, "topic_classes");
  for (const auto& c : s.topic_classes) {
    if (!s.topic_headers.contains(c.label)) fail("topic class '" + c.label + "' has no header");
  }
  if (s.topic_headers.size() != s.topic_classes.size()) fail("topic header without a topic class");
  if (s.synonyms.empty()) fail("synonyms table is empty");
  for (const auto& e : s.synonyms) {
    if (e.synonyms.empty()) fail("keyword '" + e.keyword + "' has no synonyms");
  }
  if (s.number_min < 0 || s.number_min > s.number_max) fail("bad number range");
  if (s.number_max - s.number_min < 1) fail("number range must hold at least two values");
  if (s.threshold < s.number_min || s.threshold > s.number_max) fail("threshold outside number range");
}

namespace detail {

inline std::string trim(std::string_view v) {
  std::size_t b = 0, e = v.size();
  while (b < e && is_space(v[b])) ++b;
  while (e > b && is_space(v[e - 1])) --e;
  return std::string(v.substr(b, e - b));
}

inline Token single_token(const Tokens& values, std::size_t line, const std::string& key) {
  if (values.size() != 1) throw ParseError(line, "'" + key + "' takes exactly one token");
  return values.front();
}

inline std::int64_t integer_value(const Tokens& values, std::size_t line, const std::string& key) {
  const Token t = single_token(values, line, key);
  if (!is_integer_token(t)) throw ParseError(line, "'" + key + "' must be an integer");
  return std::stoll(t);
}

}  // namespace detail

inline KeywordScheme parse_scheme(std::istream& in) {
  KeywordScheme s = default_scheme();
  std::string section;
  std::set<std::string> replaced;
  std::string raw;
  std::size_t line_no = 0;

  auto class_list = [&](const std::string& sec) -> std::vector<KeywordClass>* {
    if (sec == "sentiment") return &s.sentiment;
    if (sec == "replace_classes") return &s.replace_classes;
    if (sec == "topic_classes") return &s.topic_classes;
    return nullptr;
  };

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
      section = detail::trim(std::string_view(line).substr(1, line.size() - 2));
      static const std::set<std::string> known = {"markers",       "keywords",      "numeric",
                                                  "sentiment",     "replace_classes", "topic_classes",
                                                  "topic_headers", "synonyms"};
      if (!known.contains(section)) throw ParseError(line_no, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string key = detail::trim(std::string_view(line).substr(0, eq));
    const Tokens values = split_tokens(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (values.empty()) throw ParseError(line_no, "'" + key + "' has no value");
    if (section.empty()) throw ParseError(line_no, "key outside of any section");

    if (section == "markers") {
      static const std::map<std::string, Token KeywordScheme::*> fields = {
          {"bullet", &KeywordScheme::bullet},
          {"quote_open", &KeywordScheme::quote_open},
          {"quote_close", &KeywordScheme::quote_close},
          {"cutoff", &KeywordScheme::cutoff},
          {"clause_separator", &KeywordScheme::clause_separator},
          {"yes", &KeywordScheme::yes},
          {"no", &KeywordScheme::no},
          {"threshold_high", &KeywordScheme::threshold_high},
          {"threshold_low", &KeywordScheme::threshold_low}};
      auto it = fields.find(key);
      if (it == fields.end()) throw ParseError(line_no, "unknown marker '" + key + "'");
      s.*(it->second) = detail::single_token(values, line_no, key);
    } else if (section == "keywords") {
      static const std::map<std::string, Tokens KeywordScheme::*> pools = {
          {"majority", &KeywordScheme::majority_keywords},
          {"copy_one", &KeywordScheme::copy_one_keywords},
          {"copy_in_order", &KeywordScheme::in_order_keywords},
          {"copy_sorted", &KeywordScheme::sorted_keywords},
          {"copy_shuffled", &KeywordScheme::shuffled_keywords}};
      if (key == "check") {
        s.check_keyword = detail::single_token(values, line_no, key);
      } else if (key == "join") {
        s.join_keyword = detail::single_token(values, line_no, key);
      } else if (auto it = pools.find(key); it != pools.end()) {
        s.*(it->second) = values;
      } else {
        throw ParseError(line_no, "unknown keyword pool '" + key + "'");
      }
    } else if (section == "numeric") {
      if (key == "compare") s.compare_trigger = detail::single_token(values, line_no, key);
      else if (key == "sum") s.sum_trigger = detail::single_token(values, line_no, key);
      else if (key == "threshold") s.threshold_trigger = detail::single_token(values, line_no, key);
      else if (key == "largest") s.largest_trigger = detail::single_token(values, line_no, key);
      else if (key == "min") s.number_min = detail::integer_value(values, line_no, key);
      else if (key == "max") s.number_max = detail::integer_value(values, line_no, key);
      else if (key == "threshold_value") s.threshold = detail::integer_value(values, line_no, key);
      else throw ParseError(line_no, "unknown numeric key '" + key + "'");
    } else if (auto* classes = class_list(section)) {
      if (replaced.insert(section).second) classes->clear();
      classes->push_back({key, values});
    } else if (section == "topic_headers") {
      if (replaced.insert(section).second) s.topic_headers.clear();
      s.topic_headers[key] = detail::single_token(values, line_no, key);
    } else if (section == "synonyms") {
      if (replaced.insert(section).second) s.synonyms.clear();
      s.synonyms.push_back({key, values});
    }
  }
  return s;
}

inline KeywordScheme load_scheme(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open keyword scheme '" + path + "'");
  return parse_scheme(in);
}

inline std::string format_scheme(const KeywordScheme& s) {
  std::ostringstream out;
  auto list = [](const Tokens& ts) { return join_tokens(ts); };
  out << "[markers]\n"
      << "bullet = " << s.bullet << "\n"
      << "quote_open = " << s.quote_open << "\n"
      << "quote_close = " << s.quote_close << "\n"
      << "cutoff = " << s.cutoff << "\n"
      << "clause_separator = " << s.clause_separator << "\n"
      << "yes = " << s.yes << "\n"
      << "no = " << s.no << "\n"
      << "threshold_high = " << s.threshold_high << "\n"
      << "threshold_low = " << s.threshold_low << "\n\n";
  out << "[keywords]\n"
      << "check = " << s.check_keyword << "\n"
      << "majority = " << list(s.majority_keywords) << "\n"
      << "copy_one = " << list(s.copy_one_keywords) << "\n"
      << "copy_in_order = " << list(s.in_order_keywords) << "\n"
      << "copy_sorted = " << list(s.sorted_keywords) << "\n"
      << "copy_shuffled = " << list(s.shuffled_keywords) << "\n"
      << "join = " << s.join_keyword << "\n\n";
  out << "[numeric]\n"
      << "compare = " << s.compare_trigger << "\n"
      << "sum = " << s.sum_trigger << "\n"
      << "threshold = " << s.threshold_trigger << "\n"
      << "largest = " << s.largest_trigger << "\n"
      << "min = " << s.number_min << "\n"
      << "max = " << s.number_max << "\n"
      << "threshold_value = " << s.threshold << "\n";
  auto classes = [&](const char* name, const std::vector<KeywordClass>& cs) {
    out << "\n[" << name << "]\n";
    for (const auto& c : cs) out << c.label << " = " << list(c.members) << "\n";
  };
  classes("sentiment", s.sentiment);
  classes("replace_classes", s.replace_classes);
  classes("topic_classes", s.topic_classes);
  out << "\n[topic_headers]\n";
  for (const auto& [label, header] : s.topic_headers) out << label << " = " << header << "\n";
  out << "\n[synonyms]\n";
  for (const auto& e : s.synonyms) out << e.keyword << " = " << list(e.synonyms) << "\n";
  return out.str();
}

}  // namespace nonsense

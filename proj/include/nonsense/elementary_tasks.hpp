#pragma once

// The 21 elementary summarization subtasks.
//
// Each kind has three pieces:
//   apply_modification  plants the kind's trigger material into free
//                       sentences of a document and returns a TaskRecord;
//   compute_gold        builds the summary from the record's parameters;
//   acceptance_set      re-derives every acceptable summary by re-scanning
//                       the document for the kind's trigger tokens, without
//                       consulting the planted parameters.
//
// Tasks only ever touch the sentences they claim, so several tasks can be
// applied to one document (see ensemble.hpp) and each record stays valid.
// Copies reproduce the modified sentence verbatim unless the kind says
// otherwise (bullet dropped, keyword replaced, text cut).

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nonsense/document.hpp"
#include "nonsense/errors.hpp"
#include "nonsense/keyword_scheme.hpp"
#include "nonsense/rng.hpp"
#include "nonsense/sampling.hpp"
#include "nonsense/task_instance.hpp"
#include "nonsense/vocabulary.hpp"

namespace nonsense {

enum class ElementaryKind {
  CheckKeyword,
  ClassifyKeyword,
  MajorityKeyword,
  CopyFirstSentence,
  CopyBulleted,
  CopyQuoted,
  CopyLastSentence,
  CopyKwdOneSentence,
  CopyKwdMultipleSentInOrder,
  CopyKwdMultipleSentSorted,
  CopyKwdMultipleSentShuffled,
  ReplaceClassKeyword,
  CompareNumbers,
  SumOfNumbers,
  ThresholdNumber,
  LargestNumber,
  TruncateSentence,
  BreakClauses,
  JoinClauses,
  ParaphraseWords,
  TopicSegregation,
};

inline constexpr std::array<ElementaryKind, 21> kAllElementaryKinds = {
    ElementaryKind::CheckKeyword,
    ElementaryKind::ClassifyKeyword,
    ElementaryKind::MajorityKeyword,
    ElementaryKind::CopyFirstSentence,
    ElementaryKind::CopyBulleted,
    ElementaryKind::CopyQuoted,
    ElementaryKind::CopyLastSentence,
    ElementaryKind::CopyKwdOneSentence,
    ElementaryKind::CopyKwdMultipleSentInOrder,
    ElementaryKind::CopyKwdMultipleSentSorted,
    ElementaryKind::CopyKwdMultipleSentShuffled,
    ElementaryKind::ReplaceClassKeyword,
    ElementaryKind::CompareNumbers,
    ElementaryKind::SumOfNumbers,
    ElementaryKind::ThresholdNumber,
    ElementaryKind::LargestNumber,
    ElementaryKind::TruncateSentence,
    ElementaryKind::BreakClauses,
    ElementaryKind::JoinClauses,
    ElementaryKind::ParaphraseWords,
    ElementaryKind::TopicSegregation,
};

inline std::string_view to_string(ElementaryKind kind) {
  switch (kind) {
    case ElementaryKind::CheckKeyword: return "CheckKeyword";
    case ElementaryKind::ClassifyKeyword: return "ClassifyKeyword";
    case ElementaryKind::MajorityKeyword: return "MajorityKeyword";
    case ElementaryKind::CopyFirstSentence: return "CopyFirstSentence";
    case ElementaryKind::CopyBulleted: return "CopyBulleted";
    case ElementaryKind::CopyQuoted: return "CopyQuoted";
    case ElementaryKind::CopyLastSentence: return "CopyLastSentence";
    case ElementaryKind::CopyKwdOneSentence: return "CopyKwdOneSentence";
    case ElementaryKind::CopyKwdMultipleSentInOrder: return "CopyKwdMultipleSentInOrder";
    case ElementaryKind::CopyKwdMultipleSentSorted: return "CopyKwdMultipleSentSorted";
    case ElementaryKind::CopyKwdMultipleSentShuffled: return "CopyKwdMultipleSentShuffled";
    case ElementaryKind::ReplaceClassKeyword: return "ReplaceClassKeyword";
    case ElementaryKind::CompareNumbers: return "CompareNumbers";
    case ElementaryKind::SumOfNumbers: return "SumOfNumbers";
    case ElementaryKind::ThresholdNumber: return "ThresholdNumber";
    case ElementaryKind::LargestNumber: return "LargestNumber";
    case ElementaryKind::TruncateSentence: return "TruncateSentence";
    case ElementaryKind::BreakClauses: return "BreakClauses";
    case ElementaryKind::JoinClauses: return "JoinClauses";
    case ElementaryKind::ParaphraseWords: return "ParaphraseWords";
    case ElementaryKind::TopicSegregation: return "TopicSegregation";
  }
  return "?";
}

inline std::optional<ElementaryKind> parse_elementary_kind(std::string_view name) {
  if (name == "CopyKwdOneSent") return ElementaryKind::CopyKwdOneSentence;
  for (ElementaryKind k : kAllElementaryKinds) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

struct Placement {
  std::size_t sentence = 0;
  std::size_t position = 0;  // index into the sentence's words
  Token token;
  friend bool operator==(const Placement&, const Placement&) = default;
};

struct TaskRecord {
  ElementaryKind kind = ElementaryKind::CheckKeyword;
  std::vector<std::size_t> sentences;  // claimed sentences, ascending
  std::vector<Placement> planted;      // planted trigger tokens, document order
  std::vector<std::int64_t> numbers;   // numeric payload; clause lengths for BreakClauses
  std::vector<std::size_t> order;      // emitted order (indices into sentences), shuffled copy
  std::size_t choice = 0;              // synonym index, ParaphraseWords
  bool present = false;                // CheckKeyword

  friend bool operator==(const TaskRecord&, const TaskRecord&) = default;
};

struct TaskContext {
  const KeywordScheme& scheme;
  const Vocabulary& vocab;
};

// Tokens whose presence in a source signals the kind.
inline std::set<Token> trigger_tokens(ElementaryKind kind, const KeywordScheme& s) {
  auto members = [](const std::vector<KeywordClass>& classes) {
    std::set<Token> out;
    for (const auto& c : classes) out.insert(c.members.begin(), c.members.end());
    return out;
  };
  switch (kind) {
    case ElementaryKind::CheckKeyword: return {s.check_keyword};
    case ElementaryKind::ClassifyKeyword: return members(s.sentiment);
    case ElementaryKind::MajorityKeyword: return {s.majority_keywords.begin(), s.majority_keywords.end()};
    case ElementaryKind::CopyFirstSentence:
    case ElementaryKind::CopyLastSentence: return {};
    case ElementaryKind::CopyBulleted: return {s.bullet};
    case ElementaryKind::CopyQuoted: return {s.quote_open, s.quote_close};
    case ElementaryKind::CopyKwdOneSentence: return {s.copy_one_keywords.begin(), s.copy_one_keywords.end()};
    case ElementaryKind::CopyKwdMultipleSentInOrder:
      return {s.in_order_keywords.begin(), s.in_order_keywords.end()};
    case ElementaryKind::CopyKwdMultipleSentSorted: return {s.sorted_keywords.begin(), s.sorted_keywords.end()};
    case ElementaryKind::CopyKwdMultipleSentShuffled:
      return {s.shuffled_keywords.begin(), s.shuffled_keywords.end()};
    case ElementaryKind::ReplaceClassKeyword: return members(s.replace_classes);
    case ElementaryKind::CompareNumbers: return {s.compare_trigger};
    case ElementaryKind::SumOfNumbers: return {s.sum_trigger};
    case ElementaryKind::ThresholdNumber: return {s.threshold_trigger};
    case ElementaryKind::LargestNumber: return {s.largest_trigger};
    case ElementaryKind::TruncateSentence: return {s.cutoff};
    case ElementaryKind::BreakClauses: return {s.clause_separator};
    case ElementaryKind::JoinClauses: return {s.join_keyword};
    case ElementaryKind::ParaphraseWords: {
      std::set<Token> out;
      for (const auto& e : s.synonyms) out.insert(e.keyword);
      return out;
    }
    case ElementaryKind::TopicSegregation: return members(s.topic_classes);
  }
  return {};
}

namespace detail {

inline std::size_t count_of(const Tokens& words, const Token& t) {
  return static_cast<std::size_t>(std::count(words.begin(), words.end(), t));
}

inline std::optional<std::size_t> find_token(const Tokens& words, const Token& t, std::size_t from = 0) {
  for (std::size_t i = from; i < words.size(); ++i) {
    if (words[i] == t) return i;
  }
  return std::nullopt;
}

inline std::optional<std::size_t> find_any(const Tokens& words, const std::set<Token>& ts) {
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (ts.contains(words[i])) return i;
  }
  return std::nullopt;
}

inline const KeywordClass* class_of(const std::vector<KeywordClass>& classes, const Token& t) {
  for (const auto& c : classes) {
    if (std::find(c.members.begin(), c.members.end(), t) != c.members.end()) return &c;
  }
  return nullptr;
}

inline std::optional<std::size_t> pool_index(const Tokens& pool, const Token& t) {
  auto it = std::find(pool.begin(), pool.end(), t);
  if (it == pool.end()) return std::nullopt;
  return static_cast<std::size_t>(it - pool.begin());
}

// A unit of tokens inserted into the gap before original word `gap`
// (gap == words.size() means just before the terminator).
struct Insertion {
  std::size_t gap;
  Tokens unit;
};

inline void insert_units(Sentence& s, std::vector<Insertion> items) {
  std::stable_sort(items.begin(), items.end(), [](const Insertion& a, const Insertion& b) { return a.gap < b.gap; });
  Tokens out;
  std::size_t extra = 0;
  for (const auto& it : items) extra += it.unit.size();
  out.reserve(s.words.size() + extra);
  std::size_t next = 0;
  for (std::size_t gap = 0; gap <= s.words.size(); ++gap) {
    while (next < items.size() && items[next].gap == gap) {
      out.insert(out.end(), items[next].unit.begin(), items[next].unit.end());
      ++next;
    }
    if (gap < s.words.size()) out.push_back(std::move(s.words[gap]));
  }
  s.words = std::move(out);
}

inline std::size_t uniform_gap(Rng& rng, const Sentence& s) { return rng.index(s.words.size() + 1); }

class Planter {
 public:
  Planter(Document& doc, std::vector<bool>& claimed, ElementaryKind kind) : doc_(doc), claimed_(claimed) {
    claimed_.resize(doc_.sentences.size(), false);
    record_.kind = kind;
  }

  template <typename Pred>
  std::vector<std::size_t> free_sentences(Pred&& pred) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < doc_.sentences.size(); ++i) {
      if (!claimed_[i] && pred(doc_.sentences[i])) out.push_back(i);
    }
    return out;
  }

  std::vector<std::size_t> free_sentences() const {
    return free_sentences([](const Sentence&) { return true; });
  }

  void require(std::size_t have, std::size_t need) const {
    if (have < need) {
      throw PlacementError(std::string(to_string(record_.kind)) + ": needs " + std::to_string(need) +
                           " free sentences, document offers " + std::to_string(have));
    }
  }

  // k sentences drawn uniformly from candidates, returned ascending.
  std::vector<std::size_t> choose(Rng& rng, const std::vector<std::size_t>& candidates, std::size_t k) const {
    require(candidates.size(), k);
    std::vector<std::size_t> picked;
    for (std::size_t i : rng.sample_without_replacement(candidates.size(), k)) picked.push_back(candidates[i]);
    std::sort(picked.begin(), picked.end());
    return picked;
  }

  void claim(std::vector<std::size_t> sentences) {
    for (std::size_t s : sentences) claimed_[s] = true;
    record_.sentences = std::move(sentences);
  }

  // Records every occurrence of the trigger tokens inside the claimed sentences.
  TaskRecord finish(const std::set<Token>& triggers) {
    for (std::size_t s : record_.sentences) {
      const auto& words = doc_.sentences[s].words;
      for (std::size_t p = 0; p < words.size(); ++p) {
        if (triggers.contains(words[p])) record_.planted.push_back({s, p, words[p]});
      }
    }
    return std::move(record_);
  }

  Document& doc() { return doc_; }
  TaskRecord& record() { return record_; }

 private:
  Document& doc_;
  std::vector<bool>& claimed_;
  TaskRecord record_;
};

inline std::vector<std::int64_t> distinct_numbers(Rng& rng, const KeywordScheme& s, std::size_t n) {
  std::vector<std::int64_t> out;
  while (out.size() < n) {
    const auto v = rng.between(s.number_min, s.number_max);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

// Plants (trigger, number) pairs into 1..max_sentences free sentences and
// stores the numbers in document order.
inline void plant_numbers(Planter& p, Rng& rng, const Token& trigger, const std::vector<std::int64_t>& values,
                          std::size_t max_sentences) {
  const auto free = p.free_sentences();
  p.require(free.size(), 1);
  const std::size_t cap = std::min({max_sentences, values.size(), free.size()});
  const auto sentences = p.choose(rng, free, static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(cap))));
  std::map<std::size_t, std::vector<Insertion>> per_sentence;
  for (auto v : values) {
    const std::size_t s = sentences[rng.index(sentences.size())];
    per_sentence[s].push_back({uniform_gap(rng, p.doc().sentences[s]), {trigger, std::to_string(v)}});
  }
  for (auto& [s, items] : per_sentence) insert_units(p.doc().sentences[s], std::move(items));
  p.claim(sentences);
  for (std::size_t s : sentences) {
    const auto& words = p.doc().sentences[s].words;
    for (std::size_t i = 0; i + 1 < words.size(); ++i) {
      if (words[i] == trigger) p.record().numbers.push_back(std::stoll(words[i + 1]));
    }
  }
}

// One keyword from `pool` into one free sentence at a uniform gap.
inline void plant_one(Planter& p, Rng& rng, const Token& keyword) {
  const auto sentences = p.choose(rng, p.free_sentences(), 1);
  Sentence& s = p.doc().sentences[sentences[0]];
  insert_units(s, {{uniform_gap(rng, s), {keyword}}});
  p.claim(sentences);
}

inline void plant_multi(Planter& p, Rng& rng, const Tokens& pool) {
  const auto free = p.free_sentences();
  p.require(free.size(), 2);
  const std::size_t cap = std::min({std::size_t{4}, pool.size(), free.size()});
  const auto k = static_cast<std::size_t>(rng.between(2, static_cast<std::int64_t>(cap)));
  const auto sentences = p.choose(rng, free, k);
  const auto keywords = rng.sample_without_replacement(pool.size(), k);
  for (std::size_t i = 0; i < k; ++i) {
    Sentence& s = p.doc().sentences[sentences[i]];
    insert_units(s, {{uniform_gap(rng, s), {pool[keywords[i]]}}});
  }
  p.claim(sentences);
}

}  // namespace detail

// Plants the kind's trigger material into sentences not yet marked in
// `claimed` and marks the sentences it used. Throws PlacementError when the
// document lacks suitable free sentences.
inline TaskRecord apply_modification(ElementaryKind kind, Document& doc, Rng& rng, const TaskContext& ctx,
                                     std::vector<bool>& claimed) {
  using namespace detail;
  const KeywordScheme& sc = ctx.scheme;
  Planter p(doc, claimed, kind);
  auto has_words = [](std::size_t n) { return [n](const Sentence& s) { return s.words.size() >= n; }; };

  switch (kind) {
    case ElementaryKind::CheckKeyword:
      p.record().present = rng.bernoulli(0.5);
      if (p.record().present) plant_one(p, rng, sc.check_keyword);
      break;

    case ElementaryKind::ClassifyKeyword: {
      const auto& cls = sc.sentiment[rng.index(sc.sentiment.size())];
      plant_one(p, rng, cls.members[rng.index(cls.members.size())]);
      break;
    }

    case ElementaryKind::MajorityKeyword: {
      const auto free = p.free_sentences();
      p.require(free.size(), 1);
      const auto picks = rng.sample_without_replacement(sc.majority_keywords.size(), 2);
      std::int64_t counts[2];
      do {
        counts[0] = rng.between(1, 4);
        counts[1] = rng.between(1, 4);
      } while (counts[0] == counts[1]);
      const auto cap = static_cast<std::int64_t>(std::min<std::size_t>(3, free.size()));
      const auto sentences = p.choose(rng, free, static_cast<std::size_t>(rng.between(1, cap)));
      std::map<std::size_t, std::vector<Insertion>> per_sentence;
      for (int k = 0; k < 2; ++k) {
        for (std::int64_t c = 0; c < counts[k]; ++c) {
          const std::size_t s = sentences[rng.index(sentences.size())];
          per_sentence[s].push_back({uniform_gap(rng, doc.sentences[s]), {sc.majority_keywords[picks[k]]}});
        }
      }
      for (auto& [s, items] : per_sentence) insert_units(doc.sentences[s], std::move(items));
      p.claim(sentences);
      p.record().numbers = {counts[0], counts[1]};
      break;
    }

    case ElementaryKind::CopyFirstSentence:
    case ElementaryKind::CopyLastSentence: {
      if (doc.sentences.empty()) throw PlacementError("copy task on an empty document");
      const std::size_t s = kind == ElementaryKind::CopyFirstSentence ? 0 : doc.sentences.size() - 1;
      if (claimed[s]) throw PlacementError(std::string(to_string(kind)) + ": sentence already claimed");
      p.claim({s});
      break;
    }

    case ElementaryKind::CopyBulleted: {
      const auto sentences = p.choose(rng, p.free_sentences(has_words(1)), 1);
      insert_units(doc.sentences[sentences[0]], {{0, {sc.bullet}}});
      p.claim(sentences);
      break;
    }

    case ElementaryKind::CopyQuoted: {
      const auto sentences = p.choose(rng, p.free_sentences(has_words(2)), 1);
      Sentence& s = doc.sentences[sentences[0]];
      const auto n = static_cast<std::int64_t>(s.words.size());
      const auto len = rng.between(2, std::min<std::int64_t>(5, n));
      const auto start = static_cast<std::size_t>(rng.between(0, n - len));
      insert_units(s, {{start, {sc.quote_open}}, {start + static_cast<std::size_t>(len), {sc.quote_close}}});
      p.claim(sentences);
      break;
    }

    case ElementaryKind::CopyKwdOneSentence:
      plant_one(p, rng, sc.copy_one_keywords[rng.index(sc.copy_one_keywords.size())]);
      break;

    case ElementaryKind::CopyKwdMultipleSentInOrder: plant_multi(p, rng, sc.in_order_keywords); break;
    case ElementaryKind::CopyKwdMultipleSentSorted: plant_multi(p, rng, sc.sorted_keywords); break;
    case ElementaryKind::CopyKwdMultipleSentShuffled: {
      plant_multi(p, rng, sc.shuffled_keywords);
      auto& order = p.record().order;
      order.resize(p.record().sentences.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      rng.shuffle(order);
      break;
    }

    case ElementaryKind::ReplaceClassKeyword: {
      const auto& cls = sc.replace_classes[rng.index(sc.replace_classes.size())];
      plant_one(p, rng, cls.members[rng.index(cls.members.size())]);
      break;
    }

    case ElementaryKind::CompareNumbers:
      plant_numbers(p, rng, sc.compare_trigger, distinct_numbers(rng, sc, 2), 2);
      break;

    case ElementaryKind::SumOfNumbers: {
      std::vector<std::int64_t> values(static_cast<std::size_t>(rng.between(2, 4)));
      for (auto& v : values) v = rng.between(sc.number_min, sc.number_max);
      plant_numbers(p, rng, sc.sum_trigger, values, 2);
      break;
    }

    case ElementaryKind::ThresholdNumber:
      plant_numbers(p, rng, sc.threshold_trigger, {rng.between(sc.number_min, sc.number_max)}, 1);
      break;

    case ElementaryKind::LargestNumber: {
      std::vector<std::int64_t> values(static_cast<std::size_t>(rng.between(1, 4)));
      for (auto& v : values) v = rng.between(sc.number_min, sc.number_max);
      plant_numbers(p, rng, sc.largest_trigger, values, 2);
      break;
    }

    case ElementaryKind::TruncateSentence: {
      const auto sentences = p.choose(rng, p.free_sentences(has_words(2)), 1);
      Sentence& s = doc.sentences[sentences[0]];
      const auto cut = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(s.words.size()) - 1));
      insert_units(s, {{cut, {sc.cutoff}}});
      p.claim(sentences);
      break;
    }

    case ElementaryKind::BreakClauses: {
      const auto sentences = p.choose(rng, p.free_sentences(), 1);
      Sentence& s = doc.sentences[sentences[0]];
      const auto clauses = rng.between(2, 4);
      s.words.clear();
      for (std::int64_t c = 0; c < clauses; ++c) {
        if (c) s.words.push_back(sc.clause_separator);
        const auto len = rng.between(3, 6);
        for (std::int64_t w = 0; w < len; ++w) s.words.push_back(ctx.vocab[rng.index(ctx.vocab.size())]);
        p.record().numbers.push_back(len);
      }
      p.claim(sentences);
      break;
    }

    case ElementaryKind::JoinClauses: {
      // Runs of 2 or 3 consecutive free sentences.
      std::vector<std::size_t> starts[2];
      for (std::size_t m = 2; m <= 3; ++m) {
        for (std::size_t i = 0; i + m <= doc.sentences.size(); ++i) {
          bool ok = true;
          for (std::size_t j = i; j < i + m; ++j) ok = ok && !claimed[j];
          if (ok) starts[m - 2].push_back(i);
        }
      }
      std::vector<std::size_t> lengths;
      for (std::size_t m = 2; m <= 3; ++m) {
        if (!starts[m - 2].empty()) lengths.push_back(m);
      }
      if (lengths.empty()) throw PlacementError("JoinClauses: no two consecutive free sentences");
      const std::size_t m = lengths[rng.index(lengths.size())];
      const std::size_t first = starts[m - 2][rng.index(starts[m - 2].size())];
      std::vector<std::size_t> sentences;
      for (std::size_t j = first; j < first + m; ++j) {
        insert_units(doc.sentences[j], {{uniform_gap(rng, doc.sentences[j]), {sc.join_keyword}}});
        sentences.push_back(j);
      }
      p.claim(sentences);
      break;
    }

    case ElementaryKind::ParaphraseWords: {
      const auto& entry = sc.synonyms[rng.index(sc.synonyms.size())];
      plant_one(p, rng, entry.keyword);
      p.record().choice = rng.index(entry.synonyms.size());
      break;
    }

    case ElementaryKind::TopicSegregation: {
      const auto free = p.free_sentences();
      p.require(free.size(), 2);
      const auto cap = static_cast<std::int64_t>(std::min<std::size_t>(4, free.size()));
      const auto sentences = p.choose(rng, free, static_cast<std::size_t>(rng.between(2, cap)));
      for (std::size_t s : sentences) {
        const auto& cls = sc.topic_classes[rng.index(sc.topic_classes.size())];
        Sentence& sent = doc.sentences[s];
        insert_units(sent, {{uniform_gap(rng, sent), {cls.members[rng.index(cls.members.size())]}}});
      }
      p.claim(sentences);
      break;
    }
  }
  return p.finish(trigger_tokens(kind, sc));
}

// Pure form: modifies a copy of `doc`.
inline std::pair<Document, TaskRecord> apply_modification(ElementaryKind kind, Document doc, Rng& rng,
                                                          const TaskContext& ctx) {
  std::vector<bool> claimed(doc.sentences.size(), false);
  TaskRecord record = apply_modification(kind, doc, rng, ctx, claimed);
  return {std::move(doc), std::move(record)};
}

namespace detail {

inline void check_consistency(const TaskRecord& r, const Document& doc) {
  for (std::size_t s : r.sentences) {
    if (s >= doc.sentences.size()) throw ConsistencyError("record references a missing sentence");
  }
  for (const auto& pl : r.planted) {
    if (pl.sentence >= doc.sentences.size() || pl.position >= doc.sentences[pl.sentence].words.size() ||
        doc.sentences[pl.sentence].words[pl.position] != pl.token) {
      throw ConsistencyError("planted token '" + pl.token + "' not found at its recorded position");
    }
  }
}

inline void require_planted(const TaskRecord& r, std::size_t n) {
  if (r.planted.size() < n) throw ConsistencyError("record has too few planted tokens");
}

inline Tokens answer(Token t) { return {std::move(t), Token(kPeriod)}; }

inline std::vector<std::string> sorted_labels(const std::vector<KeywordClass>& classes) {
  std::vector<std::string> labels;
  for (const auto& c : classes) labels.push_back(c.label);
  std::sort(labels.begin(), labels.end());
  return labels;
}

inline Tokens joined_clauses(const Document& doc, const std::vector<std::size_t>& sentences, const Token& sep) {
  Tokens out;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (i) out.push_back(sep);
    const auto& w = doc.sentences[sentences[i]].words;
    out.insert(out.end(), w.begin(), w.end());
  }
  out.emplace_back(kPeriod);
  return out;
}

}  // namespace detail

// Gold summary from the record's parameters. For kinds with several
// acceptable summaries this is the variant sampled at generation time.
inline Tokens compute_gold(const TaskRecord& r, const Document& doc, const KeywordScheme& sc) {
  using namespace detail;
  check_consistency(r, doc);
  auto sentence = [&](std::size_t i) -> const Sentence& { return doc.sentences.at(i); };
  Tokens out;

  switch (r.kind) {
    case ElementaryKind::CheckKeyword:
      if (r.present) {
        require_planted(r, 1);
        if (r.planted[0].token != sc.check_keyword) throw ConsistencyError("CheckKeyword: wrong keyword");
      }
      return answer(r.present ? sc.yes : sc.no);

    case ElementaryKind::ClassifyKeyword: {
      require_planted(r, 1);
      const KeywordClass* cls = class_of(sc.sentiment, r.planted[0].token);
      if (!cls) throw ConsistencyError("ClassifyKeyword: planted token is not a sentiment keyword");
      return answer(cls->label);
    }

    case ElementaryKind::MajorityKeyword: {
      std::map<Token, std::size_t> counts;
      for (const auto& pl : r.planted) ++counts[pl.token];
      if (counts.size() != 2) throw ConsistencyError("MajorityKeyword: expected two keywords");
      auto a = counts.begin(), b = std::next(a);
      if (a->second == b->second) throw ConsistencyError("MajorityKeyword: tied counts");
      return answer(a->second > b->second ? a->first : b->first);
    }

    case ElementaryKind::CopyFirstSentence:
    case ElementaryKind::CopyLastSentence:
    case ElementaryKind::CopyKwdOneSentence:
      if (r.sentences.size() != 1) throw ConsistencyError("copy task must own one sentence");
      return sentence(r.sentences[0]).tokens();

    case ElementaryKind::CopyBulleted: {
      require_planted(r, 1);
      const Sentence& s = sentence(r.planted[0].sentence);
      if (r.planted[0].position != 0) throw ConsistencyError("CopyBulleted: bullet not at sentence start");
      out.assign(s.words.begin() + 1, s.words.end());
      out.push_back(s.terminator);
      return out;
    }

    case ElementaryKind::CopyQuoted: {
      require_planted(r, 2);
      const auto& open = r.planted[0];
      const auto& close = r.planted[1];
      if (open.sentence != close.sentence || close.position <= open.position + 1) {
        throw ConsistencyError("CopyQuoted: malformed quote placement");
      }
      const auto& w = sentence(open.sentence).words;
      out.assign(w.begin() + static_cast<std::ptrdiff_t>(open.position + 1),
                 w.begin() + static_cast<std::ptrdiff_t>(close.position));
      out.emplace_back(kPeriod);
      return out;
    }

    case ElementaryKind::CopyKwdMultipleSentInOrder:
      for (std::size_t s : r.sentences) sentence(s).append_to(out);
      return out;

    case ElementaryKind::CopyKwdMultipleSentSorted: {
      std::vector<std::pair<std::size_t, std::size_t>> keyed;  // (pool index, sentence)
      for (const auto& pl : r.planted) {
        const auto idx = pool_index(sc.sorted_keywords, pl.token);
        if (!idx) throw ConsistencyError("CopyKwdMultipleSentSorted: unknown keyword");
        keyed.emplace_back(*idx, pl.sentence);
      }
      std::sort(keyed.begin(), keyed.end());
      for (const auto& [idx, s] : keyed) sentence(s).append_to(out);
      return out;
    }

    case ElementaryKind::CopyKwdMultipleSentShuffled:
      if (r.order.size() != r.sentences.size()) throw ConsistencyError("shuffled copy: order size mismatch");
      for (std::size_t i : r.order) sentence(r.sentences.at(i)).append_to(out);
      return out;

    case ElementaryKind::ReplaceClassKeyword: {
      require_planted(r, 1);
      const auto& pl = r.planted[0];
      const KeywordClass* cls = class_of(sc.replace_classes, pl.token);
      if (!cls) throw ConsistencyError("ReplaceClassKeyword: planted token has no class");
      out = sentence(pl.sentence).tokens();
      out[pl.position] = cls->label;
      return out;
    }

    case ElementaryKind::CompareNumbers:
    case ElementaryKind::SumOfNumbers:
    case ElementaryKind::ThresholdNumber:
    case ElementaryKind::LargestNumber: {
      if (r.numbers.empty() || r.planted.size() != r.numbers.size()) {
        throw ConsistencyError("numeric task: numbers do not match planted triggers");
      }
      for (std::size_t i = 0; i < r.planted.size(); ++i) {
        const auto& w = sentence(r.planted[i].sentence).words;
        const std::size_t at = r.planted[i].position + 1;
        if (at >= w.size() || w[at] != std::to_string(r.numbers[i])) {
          throw ConsistencyError("numeric task: number missing after trigger");
        }
      }
      if (r.kind == ElementaryKind::SumOfNumbers) {
        return answer(std::to_string(std::accumulate(r.numbers.begin(), r.numbers.end(), std::int64_t{0})));
      }
      if (r.kind == ElementaryKind::ThresholdNumber) {
        return answer(r.numbers[0] >= sc.threshold ? sc.threshold_high : sc.threshold_low);
      }
      return answer(std::to_string(*std::max_element(r.numbers.begin(), r.numbers.end())));
    }

    case ElementaryKind::TruncateSentence: {
      require_planted(r, 1);
      const auto& w = sentence(r.planted[0].sentence).words;
      out.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r.planted[0].position));
      out.emplace_back(kPeriod);
      return out;
    }

    case ElementaryKind::BreakClauses: {
      if (r.sentences.size() != 1) throw ConsistencyError("BreakClauses must own one sentence");
      const auto& w = sentence(r.sentences[0]).words;
      std::size_t pos = 0;
      for (std::size_t c = 0; c < r.numbers.size(); ++c) {
        if (c) {
          if (pos >= w.size() || w[pos] != sc.clause_separator) throw ConsistencyError("BreakClauses: missing separator");
          ++pos;
        }
        const auto len = static_cast<std::size_t>(r.numbers[c]);
        if (pos + len > w.size()) throw ConsistencyError("BreakClauses: clause overruns sentence");
        out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(pos),
                   w.begin() + static_cast<std::ptrdiff_t>(pos + len));
        out.emplace_back(kPeriod);
        pos += len;
      }
      if (pos != w.size()) throw ConsistencyError("BreakClauses: clause lengths do not cover sentence");
      return out;
    }

    case ElementaryKind::JoinClauses:
      return joined_clauses(doc, r.sentences, sc.clause_separator);

    case ElementaryKind::ParaphraseWords: {
      require_planted(r, 1);
      const auto& pl = r.planted[0];
      auto it = std::find_if(sc.synonyms.begin(), sc.synonyms.end(),
                             [&](const SynonymEntry& e) { return e.keyword == pl.token; });
      if (it == sc.synonyms.end() || r.choice >= it->synonyms.size()) {
        throw ConsistencyError("ParaphraseWords: unknown keyword or synonym");
      }
      out = sentence(pl.sentence).tokens();
      out[pl.position] = it->synonyms[r.choice];
      return out;
    }

    case ElementaryKind::TopicSegregation: {
      std::map<std::string, std::vector<std::size_t>> by_class;
      for (const auto& pl : r.planted) {
        const KeywordClass* cls = class_of(sc.topic_classes, pl.token);
        if (!cls) throw ConsistencyError("TopicSegregation: planted token has no class");
        by_class[cls->label].push_back(pl.sentence);
      }
      for (const auto& label : sorted_labels(sc.topic_classes)) {
        out.push_back(sc.topic_headers.at(label));
        for (std::size_t s : by_class[label]) sentence(s).append_to(out);
      }
      return out;
    }
  }
  throw ConsistencyError("unknown elementary kind");
}

// Every summary the kind accepts, derived by re-scanning the document's
// claimed sentences (the whole document for CheckKeyword). Never throws;
// an unusable record yields an empty set.
inline std::vector<Tokens> acceptance_set(const TaskRecord& r, const Document& doc, const KeywordScheme& sc) {
  using namespace detail;
  for (std::size_t s : r.sentences) {
    if (s >= doc.sentences.size()) return {};
  }
  std::vector<const Sentence*> owned;
  for (std::size_t s : r.sentences) owned.push_back(&doc.sentences[s]);
  const std::set<Token> triggers = trigger_tokens(r.kind, sc);
  auto marked = [&]() {
    std::vector<const Sentence*> out;
    for (const Sentence* s : owned) {
      if (find_any(s->words, triggers)) out.push_back(s);
    }
    return out;
  };
  auto concat = [](const std::vector<const Sentence*>& ss) {
    Tokens out;
    for (const Sentence* s : ss) s->append_to(out);
    return out;
  };

  switch (r.kind) {
    case ElementaryKind::CheckKeyword: {
      bool found = false;
      for (const auto& s : doc.sentences) found = found || count_of(s.words, sc.check_keyword) > 0;
      return {answer(found ? sc.yes : sc.no)};
    }

    case ElementaryKind::ClassifyKeyword:
      for (const Sentence* s : owned) {
        if (auto i = find_any(s->words, triggers)) return {answer(class_of(sc.sentiment, s->words[*i])->label)};
      }
      return {};

    case ElementaryKind::MajorityKeyword: {
      std::map<Token, std::size_t> counts;
      for (const Sentence* s : owned) {
        for (const auto& w : s->words) {
          if (triggers.contains(w)) ++counts[w];
        }
      }
      if (counts.size() != 2) return {};
      auto a = counts.begin(), b = std::next(a);
      if (a->second == b->second) return {};
      return {answer(a->second > b->second ? a->first : b->first)};
    }

    case ElementaryKind::CopyFirstSentence:
      if (doc.sentences.empty()) return {};
      return {doc.sentences.front().tokens()};

    case ElementaryKind::CopyLastSentence:
      if (doc.sentences.empty()) return {};
      return {doc.sentences.back().tokens()};

    case ElementaryKind::CopyBulleted:
      for (const Sentence* s : owned) {
        if (!s->words.empty() && s->words[0] == sc.bullet) {
          Tokens out(s->words.begin() + 1, s->words.end());
          out.push_back(s->terminator);
          return {out};
        }
      }
      return {};

    case ElementaryKind::CopyQuoted:
      for (const Sentence* s : owned) {
        auto open = find_token(s->words, sc.quote_open);
        if (!open) continue;
        auto close = find_token(s->words, sc.quote_close, *open + 1);
        if (!close) continue;
        Tokens out(s->words.begin() + static_cast<std::ptrdiff_t>(*open + 1),
                   s->words.begin() + static_cast<std::ptrdiff_t>(*close));
        out.emplace_back(kPeriod);
        return {out};
      }
      return {};

    case ElementaryKind::CopyKwdOneSentence: {
      auto m = marked();
      if (m.size() != 1) return {};
      return {m[0]->tokens()};
    }

    case ElementaryKind::CopyKwdMultipleSentInOrder: {
      auto m = marked();
      if (m.empty()) return {};
      return {concat(m)};
    }

    case ElementaryKind::CopyKwdMultipleSentSorted: {
      std::vector<std::pair<std::size_t, const Sentence*>> keyed;
      for (const Sentence* s : marked()) {
        std::size_t best = sc.sorted_keywords.size();
        for (const auto& w : s->words) {
          if (auto idx = pool_index(sc.sorted_keywords, w)) best = std::min(best, *idx);
        }
        keyed.emplace_back(best, s);
      }
      if (keyed.empty()) return {};
      std::stable_sort(keyed.begin(), keyed.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      std::vector<const Sentence*> ordered;
      for (const auto& [k, s] : keyed) ordered.push_back(s);
      return {concat(ordered)};
    }

    case ElementaryKind::CopyKwdMultipleSentShuffled: {
      auto m = marked();
      if (m.empty()) return {};
      std::vector<std::size_t> idx(m.size());
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      std::set<Tokens> all;
      do {
        std::vector<const Sentence*> perm;
        for (std::size_t i : idx) perm.push_back(m[i]);
        all.insert(concat(perm));
      } while (std::next_permutation(idx.begin(), idx.end()));
      return {all.begin(), all.end()};
    }

    case ElementaryKind::ReplaceClassKeyword:
      for (const Sentence* s : owned) {
        if (auto i = find_any(s->words, triggers)) {
          Tokens out = s->tokens();
          out[*i] = class_of(sc.replace_classes, s->words[*i])->label;
          return {out};
        }
      }
      return {};

    case ElementaryKind::CompareNumbers:
    case ElementaryKind::SumOfNumbers:
    case ElementaryKind::ThresholdNumber:
    case ElementaryKind::LargestNumber: {
      const Token& trigger = *triggers.begin();
      std::vector<std::int64_t> values;
      for (const Sentence* s : owned) {
        for (std::size_t i = 0; i + 1 < s->words.size(); ++i) {
          if (s->words[i] == trigger && is_integer_token(s->words[i + 1])) values.push_back(std::stoll(s->words[i + 1]));
        }
      }
      if (values.empty()) return {};
      switch (r.kind) {
        case ElementaryKind::CompareNumbers:
          if (values.size() != 2 || values[0] == values[1]) return {};
          return {answer(std::to_string(std::max(values[0], values[1])))};
        case ElementaryKind::SumOfNumbers:
          return {answer(std::to_string(std::accumulate(values.begin(), values.end(), std::int64_t{0})))};
        case ElementaryKind::ThresholdNumber:
          if (values.size() != 1) return {};
          return {answer(values[0] >= sc.threshold ? sc.threshold_high : sc.threshold_low)};
        default:
          return {answer(std::to_string(*std::max_element(values.begin(), values.end())))};
      }
    }

    case ElementaryKind::TruncateSentence:
      for (const Sentence* s : owned) {
        if (auto i = find_token(s->words, sc.cutoff)) {
          Tokens out(s->words.begin(), s->words.begin() + static_cast<std::ptrdiff_t>(*i));
          out.emplace_back(kPeriod);
          return {out};
        }
      }
      return {};

    case ElementaryKind::BreakClauses:
      for (const Sentence* s : owned) {
        if (!find_token(s->words, sc.clause_separator)) continue;
        Tokens out;
        Tokens clause;
        auto flush = [&] {
          if (clause.empty()) return;
          out.insert(out.end(), clause.begin(), clause.end());
          out.emplace_back(kPeriod);
          clause.clear();
        };
        for (const auto& w : s->words) {
          if (w == sc.clause_separator) flush();
          else clause.push_back(w);
        }
        flush();
        return {out};
      }
      return {};

    case ElementaryKind::JoinClauses: {
      std::vector<std::size_t> joined;
      for (std::size_t s : r.sentences) {
        if (count_of(doc.sentences[s].words, sc.join_keyword)) joined.push_back(s);
      }
      if (joined.size() < 2) return {};
      return {joined_clauses(doc, joined, sc.clause_separator)};
    }

    case ElementaryKind::ParaphraseWords:
      for (const Sentence* s : owned) {
        auto i = find_any(s->words, triggers);
        if (!i) continue;
        std::vector<Tokens> out;
        for (const auto& e : sc.synonyms) {
          if (e.keyword != s->words[*i]) continue;
          for (const auto& syn : e.synonyms) {
            Tokens t = s->tokens();
            t[*i] = syn;
            out.push_back(std::move(t));
          }
        }
        return out;
      }
      return {};

    case ElementaryKind::TopicSegregation: {
      std::map<std::string, std::vector<const Sentence*>> by_class;
      for (const Sentence* s : owned) {
        if (auto i = find_any(s->words, triggers)) by_class[class_of(sc.topic_classes, s->words[*i])->label].push_back(s);
      }
      if (by_class.empty()) return {};
      Tokens out;
      for (const auto& label : sorted_labels(sc.topic_classes)) {
        out.push_back(sc.topic_headers.at(label));
        for (const Sentence* s : by_class[label]) s->append_to(out);
      }
      return {out};
    }
  }
  return {};
}

inline bool oracle_accepts(const TaskRecord& r, const Document& doc, std::span<const Token> candidate,
                           const KeywordScheme& sc) {
  for (const auto& accepted : acceptance_set(r, doc, sc)) {
    if (std::equal(accepted.begin(), accepted.end(), candidate.begin(), candidate.end())) return true;
  }
  return false;
}

// --- record (de)serialization -------------------------------------------

inline Json to_json(const TaskRecord& r) {
  Json j;
  j["kind"] = std::string(to_string(r.kind));
  j["sentences"] = r.sentences;
  Json planted = Json::array();
  for (const auto& pl : r.planted) planted.push_back(Json::array({pl.sentence, pl.position, pl.token}));
  j["planted"] = std::move(planted);
  if (!r.numbers.empty()) j["numbers"] = r.numbers;
  if (!r.order.empty()) j["order"] = r.order;
  if (r.kind == ElementaryKind::ParaphraseWords) j["choice"] = r.choice;
  if (r.kind == ElementaryKind::CheckKeyword) j["present"] = r.present;
  return j;
}

inline TaskRecord record_from_json(const Json& j) {
  try {
    TaskRecord r;
    const auto kind = parse_elementary_kind(j.at("kind").get<std::string>());
    if (!kind) throw ConsistencyError("unknown elementary kind in record");
    r.kind = *kind;
    r.sentences = j.at("sentences").get<std::vector<std::size_t>>();
    for (const auto& pl : j.at("planted")) {
      r.planted.push_back({pl.at(0).get<std::size_t>(), pl.at(1).get<std::size_t>(), pl.at(2).get<std::string>()});
    }
    if (j.contains("numbers")) r.numbers = j["numbers"].get<std::vector<std::int64_t>>();
    if (j.contains("order")) r.order = j["order"].get<std::vector<std::size_t>>();
    if (j.contains("choice")) r.choice = j["choice"].get<std::size_t>();
    if (j.contains("present")) r.present = j["present"].get<bool>();
    return r;
  } catch (const Json::exception& e) {
    throw ConsistencyError(std::string("malformed task record: ") + e.what());
  }
}

// --- instance generation --------------------------------------------------

struct DocPolicy {
  SentenceCount sentences{};
  SentenceLength length{};
};

inline TaskInstance elementary_instance(std::string task, const Document& doc, const std::vector<TaskRecord>& records,
                                        Tokens target, std::string_view family) {
  TaskInstance inst;
  inst.task = std::move(task);
  inst.source = doc.tokens();
  inst.target = std::move(target);
  inst.meta["family"] = std::string(family);
  Json recs = Json::array();
  for (const auto& r : records) recs.push_back(to_json(r));
  inst.meta["records"] = std::move(recs);
  inst.meta["sentence_lengths"] = doc.sentence_lengths();
  return inst;
}

inline TaskInstance make_elementary(ElementaryKind kind, Rng& rng, const TaskContext& ctx, Document doc) {
  std::vector<bool> claimed(doc.sentences.size(), false);
  const TaskRecord record = apply_modification(kind, doc, rng, ctx, claimed);
  Tokens gold = compute_gold(record, doc, ctx.scheme);
  return elementary_instance(std::string(to_string(kind)), doc, {record}, std::move(gold), "elementary");
}

inline TaskInstance generate_elementary(ElementaryKind kind, Rng& rng, const TaskContext& ctx,
                                       const DocPolicy& policy = {}) {
  return make_elementary(kind, rng, ctx, sample_document_by_sentences(rng, ctx.vocab, policy.sentences, policy.length));
}

}  // namespace nonsense

#pragma once

#include <cstddef>

#include "nonsense/document.hpp"
#include "nonsense/errors.hpp"
#include "nonsense/rng.hpp"
#include "nonsense/vocabulary.hpp"

namespace nonsense {

struct SentenceLength {
  std::size_t min = 5;
  std::size_t max = 15;
};

struct SentenceCount {
  std::size_t min = 7;
  std::size_t max = 13;
};

inline constexpr std::size_t kDefaultTokenBudget = 512;

inline Sentence sample_sentence(Rng& rng, const Vocabulary& vocab, SentenceLength len = {}) {
  if (vocab.empty()) throw InvalidInput("sample_sentence: empty vocabulary");
  if (len.min > len.max) throw InvalidInput("sample_sentence: min_len > max_len");
  const auto n = static_cast<std::size_t>(
      rng.between(static_cast<std::int64_t>(len.min), static_cast<std::int64_t>(len.max)));
  Sentence s;
  s.words.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.words.push_back(vocab[rng.index(vocab.size())]);
  return s;
}

inline Document sample_document_by_sentences(Rng& rng, const Vocabulary& vocab, SentenceCount count = {},
                                             SentenceLength len = {}) {
  if (count.min > count.max) throw InvalidInput("sample_document_by_sentences: min_s > max_s");
  if (vocab.empty()) throw InvalidInput("sample_document_by_sentences: empty vocabulary");
  const auto n = static_cast<std::size_t>(
      rng.between(static_cast<std::int64_t>(count.min), static_cast<std::int64_t>(count.max)));
  Document doc;
  doc.sentences.reserve(n);
  for (std::size_t i = 0; i < n; ++i) doc.sentences.push_back(sample_sentence(rng, vocab, len));
  return doc;
}

// Appends whole sentences until the document holds at least `budget` tokens.
// The budget must admit one sentence of the maximum length.
inline Document sample_document_by_tokens(Rng& rng, const Vocabulary& vocab, std::size_t budget = kDefaultTokenBudget,
                                          SentenceLength len = {}) {
  if (len.min > len.max) throw InvalidInput("sample_document_by_tokens: min_len > max_len");
  if (budget < len.max + 1) {
    throw InvalidInput("sample_document_by_tokens: budget " + std::to_string(budget) +
                       " is smaller than one maximum-length sentence");
  }
  Document doc;
  std::size_t total = 0;
  while (total < budget) {
    doc.sentences.push_back(sample_sentence(rng, vocab, len));
    total += doc.sentences.back().token_count();
  }
  return doc;
}

}  // namespace nonsense

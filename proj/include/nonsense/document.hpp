#pragma once

#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nonsense/errors.hpp"

namespace nonsense {

using Token = std::string;
using Tokens = std::vector<Token>;

inline constexpr std::string_view kPeriod = ".";

struct Sentence {
  Tokens words;
  Token terminator{kPeriod};

  std::size_t token_count() const noexcept { return words.size() + 1; }

  void append_to(Tokens& out) const {
    out.insert(out.end(), words.begin(), words.end());
    out.push_back(terminator);
  }

  Tokens tokens() const {
    Tokens out;
    out.reserve(token_count());
    append_to(out);
    return out;
  }

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Document {
  std::vector<Sentence> sentences;

  std::size_t token_count() const noexcept {
    return std::accumulate(sentences.begin(), sentences.end(), std::size_t{0},
                           [](std::size_t acc, const Sentence& s) { return acc + s.token_count(); });
  }

  Tokens tokens() const {
    Tokens out;
    out.reserve(token_count());
    for (const auto& s : sentences) s.append_to(out);
    return out;
  }

  // Token count of every sentence, in order.
  std::vector<std::size_t> sentence_lengths() const {
    std::vector<std::size_t> lengths;
    lengths.reserve(sentences.size());
    for (const auto& s : sentences) lengths.push_back(s.token_count());
    return lengths;
  }

  friend bool operator==(const Document&, const Document&) = default;
};

// Rebuilds sentence structure from a flat token sequence. Each length
// counts the sentence's terminator, which is its final token.
inline Document document_from_tokens(std::span<const Token> tokens, std::span<const std::size_t> lengths) {
  Document doc;
  doc.sentences.reserve(lengths.size());
  std::size_t pos = 0;
  for (std::size_t len : lengths) {
    if (len == 0 || pos + len > tokens.size()) {
      throw ConsistencyError("sentence lengths do not match token sequence");
    }
    Sentence s;
    s.words.assign(tokens.begin() + static_cast<std::ptrdiff_t>(pos),
                   tokens.begin() + static_cast<std::ptrdiff_t>(pos + len - 1));
    s.terminator = tokens[pos + len - 1];
    doc.sentences.push_back(std::move(s));
    pos += len;
  }
  if (pos != tokens.size()) throw ConsistencyError("sentence lengths do not cover token sequence");
  return doc;
}

inline std::string join_tokens(std::span<const Token> tokens) {
  std::string out;
  std::size_t total = tokens.empty() ? 0 : tokens.size() - 1;
  for (const auto& t : tokens) total += t.size();
  out.reserve(total);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

inline bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline Tokens split_tokens(std::string_view text) {
  Tokens out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

}  // namespace nonsense

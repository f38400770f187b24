#pragma once

// Turns user-prepared plain text into base documents.
//
// The splitter is deliberately naive: a sentence ends at '.', '!' or '?'
// followed by whitespace or end of input. Abbreviations ("e.g. ") therefore
// end a sentence, and text after the last terminal mark is dropped. The
// terminal mark is detached into its own token, so concatenating a
// sentence's tokens reproduces its non-whitespace characters.

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nonsense/document.hpp"
#include "nonsense/errors.hpp"
#include "nonsense/rng.hpp"
#include "nonsense/sampling.hpp"

namespace nonsense {

inline bool is_terminal_mark(char c) noexcept { return c == '.' || c == '!' || c == '?'; }

inline std::vector<Sentence> split_sentences(std::string_view text) {
  std::vector<Sentence> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!is_terminal_mark(text[i])) continue;
    if (i + 1 < text.size() && !is_space(text[i + 1])) continue;
    Sentence s;
    s.words = split_tokens(text.substr(start, i - start));
    s.terminator = std::string(1, text[i]);
    start = i + 1;
    if (!s.words.empty()) out.push_back(std::move(s));
  }
  return out;
}

struct BySentences {
  SentenceCount count{};
};

struct ByTokens {
  std::size_t budget = kDefaultTokenBudget;
};

using IngestPolicy = std::variant<BySentences, ByTokens>;

// Groups consecutive sentences into documents. BySentences draws each
// document's size uniformly from the range; a final group smaller than the
// minimum is dropped. ByTokens closes a document once it reaches the budget;
// a final group below the budget is dropped.
inline std::vector<Document> assemble_documents(std::vector<Sentence> sentences, const IngestPolicy& policy, Rng& rng) {
  std::vector<Document> docs;
  std::size_t pos = 0;
  if (const auto* by_s = std::get_if<BySentences>(&policy)) {
    if (by_s->count.min == 0 || by_s->count.min > by_s->count.max) throw InvalidInput("ingest: bad sentence range");
    while (pos < sentences.size()) {
      const auto want = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(by_s->count.min),
                                                             static_cast<std::int64_t>(by_s->count.max)));
      const std::size_t take = std::min(want, sentences.size() - pos);
      if (take < by_s->count.min) break;
      Document d;
      d.sentences.assign(std::make_move_iterator(sentences.begin() + static_cast<std::ptrdiff_t>(pos)),
                         std::make_move_iterator(sentences.begin() + static_cast<std::ptrdiff_t>(pos + take)));
      docs.push_back(std::move(d));
      pos += take;
    }
  } else {
    const auto& by_t = std::get<ByTokens>(policy);
    if (by_t.budget == 0) throw InvalidInput("ingest: token budget must be positive");
    Document d;
    std::size_t tokens = 0;
    for (auto& s : sentences) {
      tokens += s.token_count();
      d.sentences.push_back(std::move(s));
      if (tokens >= by_t.budget) {
        docs.push_back(std::move(d));
        d = Document{};
        tokens = 0;
      }
    }
  }
  return docs;
}

inline std::vector<Document> ingest_text(std::string_view text, const IngestPolicy& policy, Rng& rng) {
  return assemble_documents(split_sentences(text), policy, rng);
}

inline std::vector<Document> ingest_real_corpus(const std::string& path, const IngestPolicy& policy, Rng& rng) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (split_tokens(text).empty()) throw IoError("corpus '" + path + "' is empty");
  return ingest_text(text, policy, rng);
}

}  // namespace nonsense

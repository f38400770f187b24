#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nonsense/errors.hpp"

namespace nonsense {

inline constexpr std::size_t kAlphabetSize = 26;
inline constexpr std::size_t kWordLength = 3;
inline constexpr std::size_t kMaxVocabularySize = 26 * 26 * 26;  // 17576
inline constexpr std::size_t kDefaultVocabularySize = 5000;

// Words are ordered with the first letter varying fastest, then the last,
// then the middle: aaa, baa, caa, ..., zaa, aab, bab, ..., zzb, aac, ...
// Digit significance by position, least significant first.
inline constexpr std::size_t kDigitPosition[kWordLength] = {0, 2, 1};

inline std::string word_at(std::size_t index) {
  if (index >= kMaxVocabularySize) {
    throw BoundsError("word_at: index " + std::to_string(index) + " outside [0, 17576)");
  }
  std::string word(kWordLength, 'a');
  for (std::size_t pos : kDigitPosition) {
    word[pos] = static_cast<char>('a' + index % kAlphabetSize);
    index /= kAlphabetSize;
  }
  return word;
}

inline std::size_t index_of(std::string_view word) {
  if (word.size() != kWordLength) throw InvalidInput("index_of: word must have 3 letters");
  std::size_t index = 0;
  for (std::size_t d = kWordLength; d-- > 0;) {
    const char c = word[kDigitPosition[d]];
    if (c < 'a' || c > 'z') throw InvalidInput("index_of: word must be lowercase a-z");
    index = index * kAlphabetSize + static_cast<std::size_t>(c - 'a');
  }
  return index;
}

class Vocabulary {
 public:
  explicit Vocabulary(std::size_t size = kDefaultVocabularySize) {
    if (size < 1 || size > kMaxVocabularySize) {
      throw BoundsError("Vocabulary: size " + std::to_string(size) + " outside [1, 17576]");
    }
    words_.reserve(size);
    for (std::size_t i = 0; i < size; ++i) words_.push_back(word_at(i));
  }

  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }
  const std::string& operator[](std::size_t i) const { return words_[i]; }
  const std::vector<std::string>& words() const noexcept { return words_; }

  bool contains(std::string_view token) const noexcept {
    if (token.size() != kWordLength) return false;
    for (char c : token) {
      if (c < 'a' || c > 'z') return false;
    }
    return index_of(token) < words_.size();
  }

 private:
  std::vector<std::string> words_;
};

inline Vocabulary build_vocabulary(std::size_t size = kDefaultVocabularySize) { return Vocabulary(size); }

}  // namespace nonsense

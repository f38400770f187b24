#include <gtest/gtest.h>

#include <chrono>
#include <set>
#include <string>
#include <vector>

#include "nonsense/vocabulary.hpp"

using namespace nonsense;

namespace {

// Enumeration in the listed order: first letter fastest, then last, then middle.
std::vector<std::string> enumerate_words() {
  std::vector<std::string> out;
  for (char middle = 'a'; middle <= 'z'; ++middle) {
    for (char last = 'a'; last <= 'z'; ++last) {
      for (char first = 'a'; first <= 'z'; ++first) out.push_back({first, middle, last});
    }
  }
  return out;
}

}  // namespace

TEST(Vocabulary, ListedPrefix) {
  EXPECT_EQ(word_at(0), "aaa");
  EXPECT_EQ(word_at(1), "baa");
  EXPECT_EQ(word_at(2), "caa");
  EXPECT_EQ(word_at(25), "zaa");
  EXPECT_EQ(word_at(26), "aab");
  EXPECT_EQ(word_at(27), "bab");
}

TEST(Vocabulary, MatchesEnumerationOracle) {
  const auto words = enumerate_words();
  ASSERT_EQ(words.size(), kMaxVocabularySize);
  for (std::size_t i = 0; i < words.size(); ++i) ASSERT_EQ(word_at(i), words[i]) << i;
  EXPECT_EQ(words[4999], "hhk");
  EXPECT_EQ(word_at(4999), "hhk");
}

TEST(Vocabulary, RoundTripAllIndices) {
  for (std::size_t i = 0; i < kMaxVocabularySize; ++i) ASSERT_EQ(index_of(word_at(i)), i);
}

TEST(Vocabulary, WordAtOutOfRange) {
  EXPECT_THROW(word_at(17576), BoundsError);
  EXPECT_NO_THROW(word_at(17575));
}

TEST(Vocabulary, IndexOfRejectsMalformed) {
  EXPECT_THROW(index_of("ab"), InvalidInput);
  EXPECT_THROW(index_of("abcd"), InvalidInput);
  EXPECT_THROW(index_of("aBc"), InvalidInput);
}

TEST(Vocabulary, DefaultBuild) {
  const auto t0 = std::chrono::steady_clock::now();
  const Vocabulary v = build_vocabulary(5000);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ASSERT_EQ(v.size(), 5000u);
  EXPECT_EQ(v[0], "aaa");
  EXPECT_EQ(v[1], "baa");
  EXPECT_EQ(v[2], "caa");
  EXPECT_EQ(v[4999], "hhk");
  std::set<std::string> distinct(v.words().begin(), v.words().end());
  EXPECT_EQ(distinct.size(), 5000u);
  for (const auto& w : v.words()) ASSERT_EQ(w.size(), 3u);
  EXPECT_LT(secs, 1.0);
}

TEST(Vocabulary, SizeBounds) {
  const Vocabulary one(1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], "aaa");
  EXPECT_THROW(Vocabulary(17577), BoundsError);
  EXPECT_THROW(Vocabulary(0), BoundsError);
  EXPECT_EQ(Vocabulary(17576).size(), 17576u);
}

TEST(Vocabulary, Contains) {
  const Vocabulary v(5000);
  EXPECT_TRUE(v.contains("aaa"));
  EXPECT_TRUE(v.contains("hhk"));
  EXPECT_FALSE(v.contains(word_at(5000)));
  EXPECT_FALSE(v.contains("keyword1"));
  EXPECT_FALSE(v.contains("."));
  EXPECT_FALSE(v.contains("AAA"));
}

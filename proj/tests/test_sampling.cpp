#include <gtest/gtest.h>

#include <vector>

#include "nonsense/sampling.hpp"
#include "support/stats.hpp"

using namespace nonsense;

namespace {

const Vocabulary& vocab() {
  static const Vocabulary v(5000);
  return v;
}

// Words of consecutive sampled sentences, periods removed.
std::vector<std::size_t> word_stream(std::uint64_t seed, std::size_t n) {
  Rng rng = Rng::derive(seed, "word-stream", 0);
  std::vector<std::size_t> out;
  out.reserve(n + 16);
  while (out.size() < n) {
    for (const auto& w : sample_sentence(rng, vocab()).words) out.push_back(index_of(w));
  }
  out.resize(n);
  return out;
}

}  // namespace

TEST(Sampling, FixedLengthSentence) {
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const Sentence s = sample_sentence(rng, vocab(), {5, 5});
    ASSERT_EQ(s.words.size(), 5u);
    const Tokens t = s.tokens();
    ASSERT_EQ(t.size(), 6u);
    ASSERT_EQ(t.back(), ".");
  }
}

TEST(Sampling, SentenceAlwaysEndsWithPeriod) {
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const Tokens t = sample_sentence(rng, vocab()).tokens();
    ASSERT_EQ(t.back(), ".");
    for (std::size_t j = 0; j + 1 < t.size(); ++j) ASSERT_TRUE(vocab().contains(t[j]));
  }
}

TEST(Sampling, InvalidLengthRange) {
  Rng rng(3);
  EXPECT_THROW(sample_sentence(rng, vocab(), {6, 5}), InvalidInput);
  EXPECT_THROW(sample_document_by_sentences(rng, vocab(), {8, 7}), InvalidInput);
}

TEST(Sampling, SentenceLengthUniform) {
  Rng rng = Rng::derive(11, "lengths", 0);
  const std::uint64_t n = 110000;
  std::vector<std::uint64_t> counts(16);
  for (std::uint64_t i = 0; i < n; ++i) ++counts[sample_sentence(rng, vocab()).words.size()];
  for (std::size_t len = 0; len < 5; ++len) EXPECT_EQ(counts[len], 0u);
  // Eleven bins at 3 sigma each would fail about 3% of seeds, so the
  // per-bin bound is Bonferroni-widened and the family is checked jointly.
  std::vector<std::uint64_t> used(counts.begin() + 5, counts.end());
  EXPECT_LT(testkit::chi_square_uniform(used), testkit::chi_square_critical(10.0, testkit::kNormalUpper001));
  for (std::size_t len = 5; len <= 15; ++len) {
    EXPECT_TRUE(testkit::binomial_within(counts[len], n, 1.0 / 11, 3.5))
        << "length " << len << " z=" << testkit::binomial_z(counts[len], n, 1.0 / 11);
  }
}

TEST(Sampling, FixedSentenceCount) {
  Rng rng(4);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(sample_document_by_sentences(rng, vocab(), {7, 7}).sentences.size(), 7u);
}

TEST(Sampling, SentenceCountUniformAndTokenBounds) {
  Rng rng = Rng::derive(12, "counts", 0);
  const std::uint64_t n = 70000;
  std::vector<std::uint64_t> counts(14);
  for (std::uint64_t i = 0; i < n; ++i) {
    const Document d = sample_document_by_sentences(rng, vocab());
    ++counts[d.sentences.size()];
    ASSERT_GE(d.token_count(), 42u);
    ASSERT_LE(d.token_count(), 208u);
  }
  for (std::size_t c = 7; c <= 13; ++c) {
    EXPECT_TRUE(testkit::binomial_within(counts[c], n, 1.0 / 7, 3.0))
        << "count " << c << " z=" << testkit::binomial_z(counts[c], n, 1.0 / 7);
  }
}

TEST(Sampling, TokenBudgetRegime) {
  for (std::uint64_t i = 0; i < 2000; ++i) {
    Rng rng = Rng::derive(13, "budget", i);
    const Document d = sample_document_by_tokens(rng, vocab());
    const std::size_t total = d.token_count();
    ASSERT_GE(total, 512u);
    ASSERT_LE(total, 527u);
    ASSERT_LT(total - d.sentences.back().token_count(), 512u);
  }
}

TEST(Sampling, MinimalBudget) {
  Rng rng(5);
  const Document d = sample_document_by_tokens(rng, vocab(), 6, {5, 5});
  EXPECT_EQ(d.sentences.size(), 1u);
  EXPECT_EQ(d.token_count(), 6u);
}

TEST(Sampling, BudgetTooSmall) {
  Rng rng(6);
  EXPECT_THROW(sample_document_by_tokens(rng, vocab(), 15), InvalidInput);
  EXPECT_NO_THROW(sample_document_by_tokens(rng, vocab(), 16));
}

TEST(Sampling, SameStreamSameDocument) {
  Rng a = Rng::derive(9, "doc", 4), b = Rng::derive(9, "doc", 4), c = Rng::derive(9, "doc", 5);
  const Document da = sample_document_by_tokens(a, vocab());
  EXPECT_EQ(da, sample_document_by_tokens(b, vocab()));
  EXPECT_NE(da, sample_document_by_tokens(c, vocab()));
}

TEST(Sampling, WordFrequencyChiSquare) {
  const auto words = word_stream(21, 1000000);
  std::vector<std::uint64_t> counts(5000);
  for (auto w : words) ++counts[w];
  EXPECT_LT(testkit::chi_square_uniform(counts), testkit::kChiSquare4999At001);
}

TEST(Sampling, EachWordWithinFiveSigma) {
  const auto words = word_stream(22, 1000000);
  std::vector<std::uint64_t> counts(5000);
  for (auto w : words) ++counts[w];
  for (std::size_t i = 0; i < counts.size(); ++i) {
    ASSERT_TRUE(testkit::binomial_within(counts[i], words.size(), 1.0 / 5000, 5.0)) << word_at(i) << " " << counts[i];
  }
}

// Bigram independence on 50 coarse buckets (word index mod 50). Individual
// word bigrams are far too sparse at this sample size for a ratio test.
TEST(Sampling, CoarseBigramIndependence) {
  const auto words = word_stream(23, 1000000);
  constexpr std::size_t B = 50;
  std::vector<double> uni(B);
  std::vector<double> bi(B * B);
  for (auto w : words) uni[w % B] += 1;
  for (std::size_t i = 0; i + 1 < words.size(); ++i) bi[(words[i] % B) * B + words[i + 1] % B] += 1;
  const double n1 = static_cast<double>(words.size()), n2 = n1 - 1;
  double chi = 0, worst = 0;
  for (std::size_t a = 0; a < B; ++a) {
    for (std::size_t b = 0; b < B; ++b) {
      const double expected = uni[a] / n1 * uni[b] / n1 * n2;
      const double observed = bi[a * B + b];
      worst = std::max(worst, observed / expected);
      chi += (observed - expected) * (observed - expected) / expected;
    }
  }
  EXPECT_LT(worst, 10.0);
  EXPECT_LT(chi, testkit::chi_square_critical(49.0 * 49.0, testkit::kNormalUpper001));
}

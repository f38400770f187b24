#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "nonsense/rng.hpp"
#include "nonsense/rouge.hpp"
#include "support/builders.hpp"

using namespace nonsense;
using testkit::toks;

namespace {

constexpr double kTol = 1e-9;

bool is_subsequence(const Tokens& sub, const Tokens& seq) {
  std::size_t j = 0;
  for (const auto& t : seq) {
    if (j < sub.size() && sub[j] == t) ++j;
  }
  return j == sub.size();
}

// Longest subsequence of a (all 2^|a| of them) that is also one of b.
std::size_t brute_force_lcs(const Tokens& a, const Tokens& b) {
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << a.size()); ++mask) {
    Tokens sub;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (mask & (1u << i)) sub.push_back(a[i]);
    }
    if (sub.size() > best && is_subsequence(sub, b)) best = sub.size();
  }
  return best;
}

Tokens random_tokens(Rng& rng, std::size_t max_len, std::size_t alphabet) {
  Tokens out(rng.index(max_len + 1));
  for (auto& t : out) t = std::string(1, static_cast<char>('a' + rng.index(alphabet)));
  return out;
}

void expect_score(const RougeScore& s, double p, double r, double f) {
  EXPECT_NEAR(s.precision, p, kTol);
  EXPECT_NEAR(s.recall, r, kTol);
  EXPECT_NEAR(s.f1, f, kTol);
}

}  // namespace

TEST(Rouge, UnigramGolden) {
  expect_score(rouge_n(toks("aaa baa caa"), toks("aaa caa"), 1), 2.0 / 3, 1.0, 0.8);
}

TEST(Rouge, BigramGolden) {
  expect_score(rouge_n(toks("aaa baa caa"), toks("aaa baa daa"), 2), 0.5, 0.5, 0.5);
}

TEST(Rouge, LcsGolden) {
  EXPECT_EQ(lcs_length(toks("aaa baa caa"), toks("aaa caa")), 2u);
  expect_score(rouge_l(toks("aaa baa caa"), toks("aaa caa")), 2.0 / 3, 1.0, 0.8);
}

TEST(Rouge, IdenticalIsPerfect) {
  const Tokens t = toks("aaa baa caa aaa");
  for (std::size_t n : {1u, 2u}) expect_score(rouge_n(t, t, n), 1, 1, 1);
  expect_score(rouge_l(t, t), 1, 1, 1);
}

TEST(Rouge, DisjointIsZero) {
  expect_score(rouge_n(toks("aaa baa"), toks("caa daa"), 1), 0, 0, 0);
  expect_score(rouge_l(toks("aaa baa"), toks("caa daa")), 0, 0, 0);
}

TEST(Rouge, EmptySidesScoreZero) {
  expect_score(rouge_n({}, toks("aaa"), 1), 0, 0, 0);
  expect_score(rouge_n(toks("aaa"), {}, 1), 0, 0, 0);
  expect_score(rouge_l({}, {}), 0, 0, 0);
  expect_score(rouge_n(toks("aaa"), toks("aaa"), 2), 0, 0, 0);
}

TEST(Rouge, ReferenceSubsequenceHasFullRecall) {
  EXPECT_NEAR(rouge_l(toks("aaa xaa baa yaa caa"), toks("aaa baa caa")).recall, 1.0, kTol);
}

TEST(Rouge, ClippedCounts) {
  // Candidate repeats "aaa" three times, reference has it once.
  expect_score(rouge_n(toks("aaa aaa aaa"), toks("aaa baa"), 1), 1.0 / 3, 0.5, 0.4);
}

TEST(Rouge, TokenizeLowercasesAndOptionallyStrips) {
  EXPECT_EQ(rouge_tokenize("The  CAT\tsat."), toks("the cat sat."));
  RougeOptions real;
  real.strip_punctuation = true;
  EXPECT_EQ(rouge_tokenize("The cat, sat.", real), toks("the cat sat"));
}

TEST(Rouge, LcsMatchesBruteForce) {
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const Tokens a = random_tokens(rng, 10, 4), b = random_tokens(rng, 10, 4);
    ASSERT_EQ(lcs_length(a, b), brute_force_lcs(a, b)) << join_tokens(a) << " | " << join_tokens(b);
  }
}

TEST(Rouge, PrecisionRecallDuality) {
  Rng rng(18);
  for (int i = 0; i < 1000; ++i) {
    const Tokens a = random_tokens(rng, 12, 5), b = random_tokens(rng, 12, 5);
    for (std::size_t n : {1u, 2u}) {
      ASSERT_NEAR(rouge_n(a, b, n).precision, rouge_n(b, a, n).recall, kTol);
    }
    ASSERT_NEAR(rouge_l(a, b).precision, rouge_l(b, a).recall, kTol);
  }
}

TEST(Rouge, AppendingReferenceNgramKeepsRecall) {
  Rng rng(19);
  for (int i = 0; i < 1000; ++i) {
    Tokens cand = random_tokens(rng, 10, 5);
    const Tokens ref = random_tokens(rng, 10, 5);
    if (ref.size() < 2) continue;
    const double r1 = rouge_n(cand, ref, 1).recall, r2 = rouge_n(cand, ref, 2).recall;
    const std::size_t at = rng.index(ref.size() - 1);
    Tokens more = cand;
    more.push_back(ref[at]);
    ASSERT_GE(rouge_n(more, ref, 1).recall + kTol, r1);
    more.push_back(ref[at + 1]);
    ASSERT_GE(rouge_n(more, ref, 2).recall + kTol, r2);
  }
}

TEST(Rouge, RelabelingInvariance) {
  Rng rng(20);
  const std::string letters = "abcdef";
  for (int i = 0; i < 500; ++i) {
    std::vector<char> perm(letters.begin(), letters.end());
    rng.shuffle(perm);
    std::map<Token, Token> relabel;
    for (std::size_t k = 0; k < letters.size(); ++k) relabel[std::string(1, letters[k])] = std::string(1, perm[k]) + "x";
    const Tokens a = random_tokens(rng, 10, 6), b = random_tokens(rng, 10, 6);
    Tokens ra, rb;
    for (const auto& t : a) ra.push_back(relabel[t]);
    for (const auto& t : b) rb.push_back(relabel[t]);
    const RougeTriple x = score_pair(a, b), y = score_pair(ra, rb);
    ASSERT_NEAR(x.r1.f1, y.r1.f1, kTol);
    ASSERT_NEAR(x.r2.f1, y.r2.f1, kTol);
    ASSERT_NEAR(x.rl.f1, y.rl.f1, kTol);
  }
}

TEST(Rouge, ScoresInUnitInterval) {
  Rng rng(21);
  for (int i = 0; i < 1000; ++i) {
    const RougeTriple t = score_pair(random_tokens(rng, 10, 3), random_tokens(rng, 10, 3));
    for (const RougeScore* s : {&t.r1, &t.r2, &t.rl}) {
      for (double v : {s->precision, s->recall, s->f1}) {
        ASSERT_GE(v, 0.0);
        ASSERT_LE(v, 1.0);
      }
      if (s->precision + s->recall > 0) {
        ASSERT_NEAR(s->f1, 2 * s->precision * s->recall / (s->precision + s->recall), kTol);
      }
    }
  }
}

TEST(Rouge, CorpusMeans) {
  const std::vector<std::pair<Tokens, Tokens>> same{{toks("aaa baa"), toks("aaa baa")},
                                                     {toks("caa daa eaa"), toks("caa daa eaa")}};
  const RougeReport r = corpus_rouge(same);
  EXPECT_NEAR(r.mean.r1.f1, 1.0, kTol);
  EXPECT_NEAR(r.mean.r2.f1, 1.0, kTol);
  EXPECT_NEAR(r.mean.rl.f1, 1.0, kTol);

  // A one-token pair has no bigrams, so its ROUGE-2 is 0.
  const std::vector<std::pair<Tokens, Tokens>> short_pair{{toks("aaa baa"), toks("aaa baa")}, {toks("caa"), toks("caa")}};
  EXPECT_NEAR(corpus_rouge(short_pair).mean.r2.f1, 0.5, kTol);

  // F1 0.8 and 0.4 average to 0.6.
  const std::vector<std::pair<Tokens, Tokens>> mixed{{toks("aaa baa caa"), toks("aaa caa")},
                                                      {toks("aaa aaa aaa"), toks("aaa baa")}};
  EXPECT_NEAR(corpus_rouge(mixed).mean.r1.f1, 0.6, kTol);

  const std::vector<std::pair<Tokens, Tokens>> single{{toks("aaa baa caa"), toks("aaa caa")}};
  const RougeReport one = corpus_rouge(single);
  EXPECT_NEAR(one.mean.rl.f1, one.pairs[0].rl.f1, kTol);

  EXPECT_THROW(corpus_rouge(std::vector<std::pair<Tokens, Tokens>>{}), InvalidInput);
}

TEST(Rouge, JsonReportFields) {
  const std::vector<std::pair<Tokens, Tokens>> pairs{{toks("aaa baa caa"), toks("aaa caa")}};
  const Json j = to_json(corpus_rouge(pairs), true);
  for (const char* m : {"r1", "r2", "rl"}) {
    for (const char* f : {"p", "r", "f1"}) EXPECT_TRUE(j[m].contains(f)) << m << f;
  }
  EXPECT_NEAR(j["r1"]["f1"].get<double>(), 0.8, kTol);
  EXPECT_EQ(j["per_pair"].size(), 1u);
  EXPECT_FALSE(to_json(corpus_rouge(pairs), false).contains("per_pair"));
}

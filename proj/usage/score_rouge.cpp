// Score one candidate against one reference.
//
//   score_rouge "the cat sat" "the cat sat down"

#include <cstdio>

#include "nonsense/rouge.hpp"

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s CANDIDATE REFERENCE\n", argv[0]);
    return 2;
  }
  const auto cand = nonsense::rouge_tokenize(argv[1]);
  const auto ref = nonsense::rouge_tokenize(argv[2]);
  const auto s = nonsense::score_pair(cand, ref);
  std::printf("ROUGE-1  P=%.4f R=%.4f F1=%.4f\n", s.r1.precision, s.r1.recall, s.r1.f1);
  std::printf("ROUGE-2  P=%.4f R=%.4f F1=%.4f\n", s.r2.precision, s.r2.recall, s.r2.f1);
  std::printf("ROUGE-L  P=%.4f R=%.4f F1=%.4f\n", s.rl.precision, s.rl.recall, s.rl.f1);
}

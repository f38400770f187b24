// Print a handful of ensemble pairs and check each one with the oracle.
//
//   generate_ensemble [seed] [count]

#include <cstdlib>
#include <iostream>

#include "nonsense/nonsense.hpp"

int main(int argc, char** argv) {
  using namespace nonsense;
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 7;
  const std::uint64_t count = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 3;

  TaskGenConfig cfg;
  cfg.seed = seed;
  TaskGenerator gen(cfg, default_scheme());

  for (std::uint64_t i = 0; i < count; ++i) {
    const TaskInstance inst = gen(i);
    std::cout << inst.id << "  kinds:";
    for (const auto& k : inst.meta["kinds"]) std::cout << ' ' << k.get<std::string>();
    std::cout << "\n  source: " << join_tokens(inst.source) << "\n  target: " << join_tokens(inst.target)
              << "\n  oracle: " << (verify_instance(inst, gen.scheme()) ? "ok" : "REJECTED") << "\n\n";
  }
}

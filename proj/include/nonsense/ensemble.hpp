#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nonsense/elementary_tasks.hpp"
#include "nonsense/errors.hpp"

namespace nonsense {

// Kinds left out of the default ensemble: three that do not always plant a
// keyword, and two that were not learnable even on their own.
inline constexpr ElementaryKind kEnsembleExcluded[] = {
    ElementaryKind::CopyFirstSentence, ElementaryKind::CopyLastSentence, ElementaryKind::CheckKeyword,
    ElementaryKind::SumOfNumbers, ElementaryKind::CompareNumbers};

inline std::vector<ElementaryKind> default_eligible_kinds() {
  std::vector<ElementaryKind> out;
  for (ElementaryKind k : kAllElementaryKinds) {
    if (std::find(std::begin(kEnsembleExcluded), std::end(kEnsembleExcluded), k) == std::end(kEnsembleExcluded)) {
      out.push_back(k);
    }
  }
  return out;
}

struct EnsembleConfig {
  std::vector<ElementaryKind> eligible_kinds = default_eligible_kinds();
  std::size_t tasks_per_instance = 3;
  bool replacement = false;
  DocPolicy doc{};
  // Fresh base documents tried before giving up on one kind combination.
  std::size_t max_document_attempts = 1000;

  void validate() const {
    if (eligible_kinds.empty()) throw ConfigError("ensemble: no eligible kinds");
    if (std::set<ElementaryKind>(eligible_kinds.begin(), eligible_kinds.end()).size() != eligible_kinds.size()) {
      throw ConfigError("ensemble: duplicate eligible kinds");
    }
    if (tasks_per_instance == 0) throw ConfigError("ensemble: tasks_per_instance must be positive");
    if (!replacement && tasks_per_instance > eligible_kinds.size()) {
      throw ConfigError("ensemble: " + std::to_string(tasks_per_instance) + " tasks requested but only " +
                        std::to_string(eligible_kinds.size()) + " eligible kinds");
    }
    if (max_document_attempts == 0) throw ConfigError("ensemble: max_document_attempts must be positive");
  }
};

inline std::vector<ElementaryKind> sample_kinds(Rng& rng, const EnsembleConfig& cfg) {
  std::vector<ElementaryKind> kinds;
  if (cfg.replacement) {
    for (std::size_t i = 0; i < cfg.tasks_per_instance; ++i) {
      kinds.push_back(cfg.eligible_kinds[rng.index(cfg.eligible_kinds.size())]);
    }
  } else {
    for (std::size_t i : rng.sample_without_replacement(cfg.eligible_kinds.size(), cfg.tasks_per_instance)) {
      kinds.push_back(cfg.eligible_kinds[i]);
    }
  }
  return kinds;
}

// Applies the kinds in order to `doc`, each on sentences the previous ones
// left free, and concatenates their gold summaries. Empty when the document
// has no room for all of them.
inline std::optional<TaskInstance> compose_on(Document doc, const std::vector<ElementaryKind>& kinds, Rng& rng,
                                              const TaskContext& ctx) {
  std::vector<bool> claimed(doc.sentences.size(), false);
  std::vector<TaskRecord> records;
  try {
    for (ElementaryKind k : kinds) records.push_back(apply_modification(k, doc, rng, ctx, claimed));
  } catch (const PlacementError&) {
    return std::nullopt;
  }
  Tokens target;
  for (const auto& r : records) {
    const Tokens gold = compute_gold(r, doc, ctx.scheme);
    target.insert(target.end(), gold.begin(), gold.end());
  }
  TaskInstance inst = elementary_instance("ensemble", doc, records, std::move(target), "ensemble");
  Json names = Json::array();
  for (ElementaryKind k : kinds) names.push_back(std::string(to_string(k)));
  inst.meta["kinds"] = std::move(names);
  return inst;
}

// A base document without room for all kinds is replaced by a fresh sample.
inline TaskInstance compose_kinds(const std::vector<ElementaryKind>& kinds, Rng& rng, const TaskContext& ctx,
                                  const EnsembleConfig& cfg) {
  for (std::size_t attempt = 0; attempt < cfg.max_document_attempts; ++attempt) {
    auto inst = compose_on(sample_document_by_sentences(rng, ctx.vocab, cfg.doc.sentences, cfg.doc.length), kinds, rng, ctx);
    if (inst) return std::move(*inst);
  }
  throw InvalidInput("compose: no base document could host the sampled kinds");
}

inline TaskInstance compose(Rng& rng, const TaskContext& ctx, const EnsembleConfig& cfg = {}) {
  cfg.validate();
  return compose_kinds(sample_kinds(rng, cfg), rng, ctx, cfg);
}

}  // namespace nonsense

#pragma once

// Index-addressable instance generators. Instance i of a run is a pure
// function of (seed, stream, i, config), which is what lets the pipeline
// fan out over threads without changing output bytes.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nonsense/elementary_tasks.hpp"
#include "nonsense/ensemble.hpp"
#include "nonsense/keyword_scheme.hpp"
#include "nonsense/rng.hpp"
#include "nonsense/sampling.hpp"
#include "nonsense/step_tasks.hpp"
#include "nonsense/task_instance.hpp"
#include "nonsense/vocabulary.hpp"

namespace nonsense {

inline std::string config_digest(const Json& config) { return hex64(fnv1a64(config.dump())); }

inline void stamp_provenance(TaskInstance& inst, std::uint64_t seed, const std::string& stream, std::uint64_t index,
                             const std::string& digest) {
  inst.id = instance_id(stream, index);
  inst.meta["seed"] = seed;
  inst.meta["stream"] = stream;
  inst.meta["index"] = index;
  inst.meta["config_digest"] = digest;
}

struct StepGenConfig {
  std::uint64_t seed = 0;
  StepKind kind = StepKind::NSG;
  std::size_t vocab_size = kDefaultVocabularySize;
  std::size_t budget = kDefaultTokenBudget;
  MaskConfig mask{};
};

class StepGenerator {
 public:
  StepGenerator(StepGenConfig cfg, std::string digest = {})
      : cfg_(std::move(cfg)),
        vocab_(cfg_.vocab_size),
        stream_("step-" + std::string(to_string(cfg_.kind))),
        digest_(std::move(digest)) {}

  TaskInstance operator()(std::uint64_t index) const {
    Rng rng = Rng::derive(cfg_.seed, stream_, index);
    const Document doc = sample_document_by_tokens(rng, vocab_, cfg_.budget);
    TaskInstance inst = make_step(cfg_.kind, rng, doc, cfg_.mask);
    stamp_provenance(inst, cfg_.seed, stream_, index, digest_);
    return inst;
  }

  const std::string& stream() const { return stream_; }

 private:
  StepGenConfig cfg_;
  Vocabulary vocab_;
  std::string stream_;
  std::string digest_;
};

struct TaskGenConfig {
  std::uint64_t seed = 0;
  std::optional<ElementaryKind> kind;  // empty: ensemble
  std::size_t vocab_size = kDefaultVocabularySize;
  EnsembleConfig ensemble{};
  DocPolicy doc{};
};

class TaskGenerator {
 public:
  TaskGenerator(TaskGenConfig cfg, KeywordScheme scheme, std::string digest = {})
      : cfg_(std::move(cfg)),
        vocab_(cfg_.vocab_size),
        scheme_(std::move(scheme)),
        stream_("tasks-" + (cfg_.kind ? std::string(to_string(*cfg_.kind)) : std::string("ensemble"))),
        digest_(std::move(digest)) {
    validate_scheme(scheme_, vocab_);
    if (!cfg_.kind) {
      cfg_.ensemble.doc = cfg_.doc;
      cfg_.ensemble.validate();
    }
  }

  TaskInstance operator()(std::uint64_t index) const {
    Rng rng = Rng::derive(cfg_.seed, stream_, index);
    const TaskContext ctx{scheme_, vocab_};
    TaskInstance inst = cfg_.kind ? generate_elementary(*cfg_.kind, rng, ctx, cfg_.doc) : compose(rng, ctx, cfg_.ensemble);
    stamp_provenance(inst, cfg_.seed, stream_, index, digest_);
    return inst;
  }

  const KeywordScheme& scheme() const { return scheme_; }
  const Vocabulary& vocabulary() const { return vocab_; }
  const std::string& stream() const { return stream_; }

 private:
  TaskGenConfig cfg_;
  Vocabulary vocab_;
  KeywordScheme scheme_;
  std::string stream_;
  std::string digest_;
};

// Task applied to externally supplied (ingested) documents. `task` is a step
// kind name, an elementary kind name, or "ensemble".
class DocumentTaskGenerator {
 public:
  DocumentTaskGenerator(std::vector<Document> docs, std::string task, std::uint64_t seed, KeywordScheme scheme,
                        std::string digest = {}, MaskConfig mask = {}, EnsembleConfig ensemble = {},
                        std::size_t vocab_size = kDefaultVocabularySize)
      : docs_(std::move(docs)),
        task_(std::move(task)),
        seed_(seed),
        vocab_(vocab_size),
        scheme_(std::move(scheme)),
        mask_(std::move(mask)),
        ensemble_(std::move(ensemble)),
        stream_("ingest-" + task_),
        digest_(std::move(digest)) {
    step_ = parse_step_kind(task_);
    elementary_ = parse_elementary_kind(task_);
    if (!step_ && !elementary_ && task_ != "ensemble") throw ConfigError("unknown task '" + task_ + "'");
    if (!step_) validate_scheme(scheme_, vocab_);
    if (task_ == "ensemble") ensemble_.validate();
  }

  std::uint64_t size() const { return docs_.size(); }

  // Empty when the document cannot host the task (too few sentences).
  std::optional<TaskInstance> try_make(std::uint64_t index) const {
    Rng rng = Rng::derive(seed_, stream_, index);
    const Document& doc = docs_.at(index);
    const TaskContext ctx{scheme_, vocab_};
    std::optional<TaskInstance> inst;
    try {
      if (step_) {
        inst = make_step(*step_, rng, doc, mask_);
      } else if (elementary_) {
        inst = make_elementary(*elementary_, rng, ctx, doc);
      } else {
        for (std::size_t attempt = 0; attempt < 100 && !inst; ++attempt) {
          inst = compose_on(doc, sample_kinds(rng, ensemble_), rng, ctx);
        }
        if (!inst) return std::nullopt;
      }
    } catch (const InvalidInput&) {
      return std::nullopt;
    }
    stamp_provenance(*inst, seed_, stream_, index, digest_);
    return inst;
  }

 private:
  std::vector<Document> docs_;
  std::string task_;
  std::uint64_t seed_;
  Vocabulary vocab_;
  KeywordScheme scheme_;
  MaskConfig mask_;
  EnsembleConfig ensemble_;
  std::string stream_;
  std::string digest_;
  std::optional<StepKind> step_;
  std::optional<ElementaryKind> elementary_;
};

}  // namespace nonsense

#pragma once

// Denoising pretraining tasks over base documents: next sentence
// generation, sentence reordering and masked document generation, plus the
// "adjusted" variants whose targets carry no copied text.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nonsense/document.hpp"
#include "nonsense/errors.hpp"
#include "nonsense/rng.hpp"
#include "nonsense/task_instance.hpp"

namespace nonsense {

enum class StepKind { NSG, SR, SRAdjusted, MDG, MDGAdjusted };

inline constexpr StepKind kAllStepKinds[] = {StepKind::NSG, StepKind::SR, StepKind::SRAdjusted, StepKind::MDG,
                                             StepKind::MDGAdjusted};

inline std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::NSG: return "nsg";
    case StepKind::SR: return "sr";
    case StepKind::SRAdjusted: return "sr-adjusted";
    case StepKind::MDG: return "mdg";
    case StepKind::MDGAdjusted: return "mdg-adjusted";
  }
  return "?";
}

inline std::optional<StepKind> parse_step_kind(std::string_view name) {
  for (StepKind k : kAllStepKinds) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

struct MaskConfig {
  double mask_fraction = 0.15;
  std::string mask_token = "[MASK]";
  bool per_token = true;

  std::size_t span_length(std::size_t token_count) const {
    if (!(mask_fraction > 0.0 && mask_fraction < 1.0)) throw InvalidInput("mask_fraction must lie in (0, 1)");
    const auto len = static_cast<std::size_t>(std::llround(mask_fraction * static_cast<double>(token_count)));
    return std::max<std::size_t>(len, 1);
  }
};

namespace detail {

inline TaskInstance step_instance(StepKind kind, const Document& doc) {
  TaskInstance inst;
  inst.task = std::string(to_string(kind));
  inst.meta["family"] = "step";
  inst.meta["kind"] = inst.task;
  inst.meta["doc_digest"] = token_digest(doc.tokens());
  return inst;
}

inline void require_sentences(const Document& doc, std::size_t n, std::string_view what) {
  if (doc.sentences.size() < n) {
    throw InvalidInput(std::string(what) + ": document needs at least " + std::to_string(n) + " sentences");
  }
}

}  // namespace detail

// Sentence boundary (count of leading sentences) whose cumulative token
// count is closest to half the document; ties go to the earlier boundary.
inline std::size_t nsg_split_point(const Document& doc) {
  detail::require_sentences(doc, 2, "make_nsg");
  const std::size_t total = doc.token_count();
  std::size_t best = 1;
  std::size_t best_dist = static_cast<std::size_t>(-1);
  std::size_t prefix = 0;
  for (std::size_t b = 1; b < doc.sentences.size(); ++b) {
    prefix += doc.sentences[b - 1].token_count();
    const std::size_t twice = 2 * prefix;
    const std::size_t dist = twice > total ? twice - total : total - twice;
    if (dist < best_dist) {
      best_dist = dist;
      best = b;
    }
  }
  return best;
}

inline TaskInstance make_nsg(const Document& doc) {
  const std::size_t split = nsg_split_point(doc);
  TaskInstance inst = detail::step_instance(StepKind::NSG, doc);
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    doc.sentences[i].append_to(i < split ? inst.source : inst.target);
  }
  inst.meta["split"] = split;
  return inst;
}

// order[k] = original index of the sentence shown at position k.
inline TaskInstance make_sr_with_order(const Document& doc, std::span<const std::size_t> order, bool adjusted) {
  detail::require_sentences(doc, 2, "make_sr");
  const std::size_t n = doc.sentences.size();
  if (order.size() != n) throw InvalidInput("make_sr: permutation size mismatch");
  std::vector<std::size_t> position(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (order[k] >= n || position[order[k]] != n) throw InvalidInput("make_sr: not a permutation");
    position[order[k]] = k;
  }

  TaskInstance inst = detail::step_instance(adjusted ? StepKind::SRAdjusted : StepKind::SR, doc);
  std::vector<std::size_t> lengths;
  lengths.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Sentence& s = doc.sentences[order[k]];
    s.append_to(inst.source);
    lengths.push_back(s.token_count());
  }
  if (adjusted) {
    for (std::size_t i = 0; i < n; ++i) inst.target.push_back(std::to_string(position[i] + 1));
  } else {
    inst.target = doc.tokens();
  }
  inst.meta["order"] = std::vector<std::size_t>(order.begin(), order.end());
  inst.meta["sentence_lengths"] = lengths;
  return inst;
}

// Uniform permutation of n >= 2 items, resampled while it is the identity.
inline std::vector<std::size_t> sample_non_identity_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> order(n);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    if (n < 2) return order;
    for (std::size_t i = 0; i < n; ++i) {
      if (order[i] != i) return order;
    }
  }
}

inline TaskInstance make_sr(Rng& rng, const Document& doc) {
  detail::require_sentences(doc, 2, "make_sr");
  const auto order = sample_non_identity_permutation(rng, doc.sentences.size());
  return make_sr_with_order(doc, order, false);
}

inline TaskInstance make_sr_adjusted(Rng& rng, const Document& doc) {
  detail::require_sentences(doc, 2, "make_sr_adjusted");
  const auto order = sample_non_identity_permutation(rng, doc.sentences.size());
  return make_sr_with_order(doc, order, true);
}

inline TaskInstance make_mdg_at(const Document& doc, const MaskConfig& cfg, std::size_t start, bool adjusted) {
  const Tokens tokens = doc.tokens();
  const std::size_t len = cfg.span_length(tokens.size());
  if (len >= tokens.size()) throw InvalidInput("make_mdg: mask span covers the whole document");
  if (start + len > tokens.size()) throw InvalidInput("make_mdg: mask span out of range");

  TaskInstance inst = detail::step_instance(adjusted ? StepKind::MDGAdjusted : StepKind::MDG, doc);
  inst.source.reserve(tokens.size());
  inst.source.insert(inst.source.end(), tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(start));
  if (cfg.per_token) {
    inst.source.insert(inst.source.end(), len, cfg.mask_token);
  } else {
    inst.source.push_back(cfg.mask_token);
  }
  inst.source.insert(inst.source.end(), tokens.begin() + static_cast<std::ptrdiff_t>(start + len), tokens.end());
  if (adjusted) {
    inst.target.assign(tokens.begin() + static_cast<std::ptrdiff_t>(start),
                       tokens.begin() + static_cast<std::ptrdiff_t>(start + len));
  } else {
    inst.target = tokens;
  }
  inst.meta["mask"] = {{"start", start},
                       {"length", len},
                       {"token", cfg.mask_token},
                       {"per_token", cfg.per_token},
                       {"fraction", cfg.mask_fraction}};
  return inst;
}

inline TaskInstance make_mdg(Rng& rng, const Document& doc, const MaskConfig& cfg = {}) {
  const std::size_t total = doc.token_count();
  const std::size_t len = cfg.span_length(total);
  if (len >= total) throw InvalidInput("make_mdg: mask span covers the whole document");
  return make_mdg_at(doc, cfg, rng.index(total - len + 1), false);
}

inline TaskInstance make_mdg_adjusted(Rng& rng, const Document& doc, const MaskConfig& cfg = {}) {
  const std::size_t total = doc.token_count();
  const std::size_t len = cfg.span_length(total);
  if (len >= total) throw InvalidInput("make_mdg_adjusted: mask span covers the whole document");
  return make_mdg_at(doc, cfg, rng.index(total - len + 1), true);
}

inline TaskInstance make_step(StepKind kind, Rng& rng, const Document& doc, const MaskConfig& cfg = {}) {
  switch (kind) {
    case StepKind::NSG: return make_nsg(doc);
    case StepKind::SR: return make_sr(rng, doc);
    case StepKind::SRAdjusted: return make_sr_adjusted(rng, doc);
    case StepKind::MDG: return make_mdg(rng, doc, cfg);
    case StepKind::MDGAdjusted: return make_mdg_adjusted(rng, doc, cfg);
  }
  throw InvalidInput("make_step: unknown kind");
}

// Reconstructs the original document from an instance's source, target and
// metadata and checks it against the recorded digest. Returns an empty
// string on success, otherwise the reason for failure.
inline std::string check_step_instance(const TaskInstance& inst) {
  const Json& meta = inst.meta;
  if (!meta.contains("kind") || !meta.contains("doc_digest")) return "missing step metadata";
  const auto kind = parse_step_kind(meta["kind"].get<std::string>());
  if (!kind) return "unknown step kind";
  const std::string digest = meta["doc_digest"].get<std::string>();
  if (inst.source.empty() || inst.target.empty()) return "empty source or target";

  switch (*kind) {
    case StepKind::NSG: {
      Tokens whole = inst.source;
      whole.insert(whole.end(), inst.target.begin(), inst.target.end());
      if (token_digest(whole) != digest) return "source + target does not reproduce the document";
      return {};
    }
    case StepKind::SR:
    case StepKind::SRAdjusted: {
      if (!meta.contains("order") || !meta.contains("sentence_lengths")) return "missing permutation metadata";
      const auto order = meta["order"].get<std::vector<std::size_t>>();
      const auto lengths = meta["sentence_lengths"].get<std::vector<std::size_t>>();
      const std::size_t n = order.size();
      if (n < 2 || lengths.size() != n) return "bad permutation metadata";
      Document shown;
      try {
        shown = document_from_tokens(inst.source, lengths);
      } catch (const ConsistencyError& e) {
        return e.what();
      }
      std::vector<std::size_t> position(n, n);
      for (std::size_t k = 0; k < n; ++k) {
        if (order[k] >= n || position[order[k]] != n) return "order is not a permutation";
        position[order[k]] = k;
      }
      bool identity = true;
      for (std::size_t k = 0; k < n; ++k) identity = identity && order[k] == k;
      if (identity) return "identity permutation";

      Document original;
      original.sentences.resize(n);
      for (std::size_t k = 0; k < n; ++k) original.sentences[order[k]] = shown.sentences[k];
      const Tokens rebuilt = original.tokens();
      if (token_digest(rebuilt) != digest) return "permutation does not reproduce the document";

      if (*kind == StepKind::SR) {
        if (inst.target != rebuilt) return "target is not the reordered document";
        return {};
      }
      // Adjusted target: apply 1-based indices to the shown sentences.
      if (inst.target.size() != n) return "index target has wrong length";
      Document applied;
      for (const auto& tok : inst.target) {
        char* end = nullptr;
        const unsigned long j = std::strtoul(tok.c_str(), &end, 10);
        if (tok.empty() || *end != '\0' || j < 1 || j > n) return "malformed index token '" + tok + "'";
        applied.sentences.push_back(shown.sentences[j - 1]);
      }
      if (applied.tokens() != rebuilt) return "indices do not invert the shuffle";
      return {};
    }
    case StepKind::MDG:
    case StepKind::MDGAdjusted: {
      if (!meta.contains("mask")) return "missing mask metadata";
      const Json& mask = meta["mask"];
      const auto start = mask["start"].get<std::size_t>();
      const auto len = mask["length"].get<std::size_t>();
      const auto token = mask["token"].get<std::string>();
      const bool per_token = mask["per_token"].get<bool>();
      const std::size_t shown_len = per_token ? len : 1;
      if (len == 0 || start + shown_len > inst.source.size()) return "mask span out of range";
      for (std::size_t i = 0; i < shown_len; ++i) {
        if (inst.source[start + i] != token) return "mask tokens missing at recorded span";
      }
      if (*kind == StepKind::MDG) {
        if (inst.target.size() != inst.source.size() - shown_len + len) return "target length mismatch";
        for (std::size_t i = 0; i < start; ++i) {
          if (inst.source[i] != inst.target[i]) return "unmasked prefix differs from target";
        }
        const std::size_t tail = inst.source.size() - start - shown_len;
        for (std::size_t i = 0; i < tail; ++i) {
          if (inst.source[start + shown_len + i] != inst.target[start + len + i]) {
            return "unmasked suffix differs from target";
          }
        }
        if (token_digest(inst.target) != digest) return "target is not the original document";
        return {};
      }
      if (inst.target.size() != len) return "masked-span target has wrong length";
      Tokens spliced(inst.source.begin(), inst.source.begin() + static_cast<std::ptrdiff_t>(start));
      spliced.insert(spliced.end(), inst.target.begin(), inst.target.end());
      spliced.insert(spliced.end(), inst.source.begin() + static_cast<std::ptrdiff_t>(start + shown_len),
                     inst.source.end());
      if (token_digest(spliced) != digest) return "splice does not reproduce the document";
      return {};
    }
  }
  return "unknown step kind";
}

}  // namespace nonsense

#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#include "nonsense/document.hpp"
#include "nonsense/rng.hpp"

namespace nonsense {

using Json = nlohmann::ordered_json;

// One input->summary pair plus whatever metadata its verifier needs.
struct TaskInstance {
  std::string id;
  std::string task;
  Tokens source;
  Tokens target;
  Json meta = Json::object();
};

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Digest of a token sequence as it would be written (single-space joined).
inline std::string token_digest(std::span<const Token> tokens) { return hex64(fnv1a64(join_tokens(tokens))); }

inline std::string instance_id(std::string_view stream, std::uint64_t index) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%08llu", static_cast<unsigned long long>(index));
  return std::string(stream) + "-" + buf;
}

}  // namespace nonsense

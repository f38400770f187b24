#pragma once

#include <initializer_list>
#include <string>

#include "nonsense/document.hpp"

namespace nonsense::testkit {

inline Sentence sentence(std::string_view text) {
  Sentence s;
  s.words = split_tokens(text);
  return s;
}

inline Document document(std::initializer_list<std::string_view> sentences) {
  Document d;
  for (auto s : sentences) d.sentences.push_back(sentence(s));
  return d;
}

inline Tokens toks(std::string_view text) { return split_tokens(text); }

}  // namespace nonsense::testkit

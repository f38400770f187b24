#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nonsense {

// Precondition violated by caller-supplied data (empty vocabulary, document
// too short for a task, bad mask fraction, ...).
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BoundsError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// A task could not find enough free sentences in the document.
struct PlacementError : InvalidInput {
  using InvalidInput::InvalidInput;
};

// A TaskRecord does not describe the document it is paired with.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace nonsense

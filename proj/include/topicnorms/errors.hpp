#pragma once

#include <stdexcept>
#include <string>

namespace topicnorms {

// Malformed input data (corpus files, lemma maps, stores, gold files).
// Carries a 1-based line number when one is known; line 0 means "whole input".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message
                                : message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Contract violation: caller passed arguments outside an operation's domain.
class InvalidArgument : public std::runtime_error {
 public:
  explicit InvalidArgument(const std::string& message)
      : std::runtime_error(message) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace topicnorms

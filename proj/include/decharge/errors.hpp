#pragma once

#include <stdexcept>
#include <string>

namespace decharge {

/// Malformed input text. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a model invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A selection that cannot be served (no enabled slot, missing choice).
class InfeasibleSelection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace decharge

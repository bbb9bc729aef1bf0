#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rainbow {

/// Input document could not be parsed; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  enum class Kind { kMalformed, kOutOfRange, kDuplicateEdge, kSelfLoop };

  ParseError(Kind kind, std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        kind_(kind),
        line_(line) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

/// An operation was called outside its domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive computation ran out of its extension-step budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A size guard (table size, auxiliary graph order, ...) would be exceeded.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rainbow

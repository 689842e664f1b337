#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace iic {

/// Caller broke a documented precondition (dimension mismatch, bad level, ...).
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A token count left the representable range. Arithmetic never wraps silently.
class OverflowError : public std::runtime_error {
 public:
  explicit OverflowError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An internal invariant failed; indicates a bug in the checker itself.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

/// Rejection of an input file, with source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t col, const std::string& msg)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}

  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t line_;
  std::size_t col_;
};

}  // namespace iic

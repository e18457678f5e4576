#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dlrdb {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column = 0);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input that violates a structural invariant (unknown names,
/// arity mismatches, overlapping components, inconsistent mapping, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace dlrdb

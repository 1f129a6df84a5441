#pragma once

#include <stdexcept>
#include <string>

namespace hodyn {

// Exit-code relevant error families. The CLI maps ValidationError -> 2 and
// ObstructionError -> 3; anything else is an internal failure.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: grammar violations, undeclared identifiers, bad manifests.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Syntax error carrying the 1-based column inside the offending text.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& msg, std::size_t column)
      : ValidationError(msg + " (column " + std::to_string(column) + ")"), column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/// The mathematics refuses: degenerate Hessian, integrability failure,
/// non-invertible auxiliary block, nonlinear unknowns.
class ObstructionError : public Error {
 public:
  using Error::Error;
};

/// Exact arithmetic hit a zero denominator.
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

}  // namespace hodyn

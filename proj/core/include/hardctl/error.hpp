#pragma once

#include <stdexcept>
#include <string>

namespace hardctl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input (bad ranking, mismatched sizes, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An exact search would exceed its configured size or state budget.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// Missing or unusable external configuration (e.g. no ASP solver binary).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Text-format parse failure; carries the 1-based line number.
class ParseError : public InvalidInput {
 public:
  ParseError(int line, const std::string& what)
      : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// An internal cross-check failed. Always a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace hardctl

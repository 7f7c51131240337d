#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bioinstruct {

// Base class for all library errors. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed source data. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  explicit ParseError(const std::string& msg) : Error(msg), line_(0) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Violated invariant or precondition on domain values.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Missing inputs, quota violations, inconsistent configurations.
class DataError : public Error {
 public:
  using Error::Error;
};

// Generation backend failure (network, protocol, exhausted retries).
class BackendError : public Error {
 public:
  using Error::Error;
};

}  // namespace bioinstruct

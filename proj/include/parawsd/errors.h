#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace parawsd {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input line. line() is 1-based; 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a data invariant (duplicate ids and the like).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An identifier that does not resolve (unknown ILI code, unknown unit).
class LookupError : public Error {
 public:
  using Error::Error;
};

// Bad or missing configuration, including unreadable resource paths.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Two derived structures that should agree do not (e.g. lexicon vs. EQ matrix).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace parawsd

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nbspec {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed edge-list or generator text. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An operation was called outside its domain (bad vertex id, wrong family, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Work budget exceeded (enumeration or brute-force limits).
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace nbspec

#pragma once

#include <stdexcept>
#include <string>

namespace galact {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside the range an operation accepts (e.g. Dihedral(2),
/// p dividing the group order).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input text (Cayley table, CSV row, field line) could not be parsed.
class ParseError : public Error {
 public:
  ParseError(std::string const& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(std::string const& what) : Error(what), line_(0) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An internal consistency check failed. Seeing one of these means a bug
/// (or a corrupted input object), never a property of the data.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace galact

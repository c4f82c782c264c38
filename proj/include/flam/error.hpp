#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flam {

// Base of every error the library reports. The CLI maps the concrete
// subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class TypeError : public Error {
 public:
  using Error::Error;
};

// A space, table or budget exceeded its guard.
class GuardError : public Error {
 public:
  using Error::Error;
};

// Arithmetic misuse: non-prime modulus, inverse of zero, mixed moduli.
class FieldError : public Error {
 public:
  using Error::Error;
};

// Something that the metatheory says cannot happen (fuel exhaustion on a
// strongly normalizing term, a stuck closed term).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace flam

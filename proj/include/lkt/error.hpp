#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lkt {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A symbol is used without declaration, declared twice, or with the wrong arity.
class DeclarationError : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An operation was called with arguments violating its precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A proof transformation could not be carried out.
class TransformError : public Error {
 public:
  using Error::Error;
};

}  // namespace lkt

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tcforge {

// Base for everything the library throws on bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition of an operation does not hold (CLI exit code 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

class UnboundVariable : public DomainError {
 public:
  explicit UnboundVariable(const std::string& name)
      : DomainError("unbound variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Malformed text input (CLI exit code 2).
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

}  // namespace tcforge

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fil {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }
  std::size_t line_;
  std::size_t column_;
};

// Well-formed input that does not make sense: unknown symbols, arity
// mismatches, degrees outside the declared lattice, terms outside a universe.
class SemanticError : public Error {
 public:
  using Error::Error;
};

class LatticeMismatch : public SemanticError {
 public:
  LatticeMismatch() : SemanticError("operands belong to different lattices") {}
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace fil

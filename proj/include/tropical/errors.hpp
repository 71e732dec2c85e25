#pragma once

#include <stdexcept>
#include <string>

namespace tropical {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rank-one normalisation needs a finite (1,1) entry.
class PivotError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A structural precondition on the matrices (negative cycles, validated family) does not hold.
class AssumptionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace tropical

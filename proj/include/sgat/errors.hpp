#pragma once

#include <stdexcept>
#include <string>

namespace sgat {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed document. Line and column are 1-based; column 0 means "whole line".
class ParseError : public Error {
public:
  ParseError(std::string message, int line, int column = 0)
      : Error(format(message, line, column)), message_(std::move(message)), line_(line),
        column_(column) {}

  const std::string& message() const { return message_; }
  int line() const { return line_; }
  int column() const { return column_; }

private:
  static std::string format(const std::string& message, int line, int column) {
    std::string out = "line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    return out + ": " + message;
  }

  std::string message_;
  int line_;
  int column_;
};

/// A computation would exceed a configured size budget. The exact size is
/// always reported as a decimal string since it may not fit any machine word.
class BudgetExceeded : public Error {
public:
  BudgetExceeded(const std::string& what, std::string required, std::string budget)
      : Error(what + ": needs " + required + ", budget " + budget), required_(std::move(required)),
        budget_(std::move(budget)) {}

  const std::string& required() const { return required_; }
  const std::string& budget() const { return budget_; }

private:
  std::string required_;
  std::string budget_;
};

/// The input does not satisfy an algorithm's precondition (not level-restricted,
/// non-planar piece for a planar-only solver, ...).
class PreconditionError : public Error {
public:
  using Error::Error;
};

}  // namespace sgat

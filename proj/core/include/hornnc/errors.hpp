#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hornnc {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Syntax error while reading a formula or program file. Positions are 1-based.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(msg + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

// Operation requires negation normal form but a Neg node was found.
class NotNnfError : public Error {
public:
  using Error::Error;
};

// Clause count of a distributive translation would exceed the configured cap.
class BlowupLimitError : public Error {
public:
  using Error::Error;
};

// Rule application preconditions not met (bad unit/target/scope).
class NotApplicableError : public Error {
public:
  using Error::Error;
};

// solve() requires a Horn-NC input.
class NotHornNcError : public Error {
public:
  using Error::Error;
};

// Truth-table operations are capped at a fixed variable count.
class TooManyVariablesError : public Error {
public:
  using Error::Error;
};

// evaluate() hit a variable missing from the assignment.
class UnassignedVariableError : public Error {
public:
  using Error::Error;
};

// A logic-program rule violates the body/head shape requirements.
class InvalidRuleError : public Error {
public:
  InvalidRuleError(const std::string& msg, std::size_t rule_index)
      : Error(msg), rule_index(rule_index) {}
  std::size_t rule_index;
};

// An internal invariant failed; indicates a bug, never user error.
class InternalInvariantError : public Error {
public:
  using Error::Error;
};

}  // namespace hornnc

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace achem {

// Base for every error raised by the library. The CLI maps these onto
// exit codes, so each subclass corresponds to one failure family.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Chemistry DSL or entity-literal syntax error, with 1-based position.
class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

// A syntactically valid chemistry that violates a declaration invariant
// (undeclared symbol, duplicate name, empty reaction input, ...). The
// position is 0:0 when the chemistry was built in code rather than parsed.
class SpecError : public Error {
public:
  enum class Kind {
    undeclared_symbol,
    duplicate_molecule,
    duplicate_reaction,
    empty_input,
    duplicate_init,
    duplicate_class,
    overlapping_classes,
  };

  SpecError(Kind kind, const std::string& what) : Error(what), kind_(kind), line_(0), column_(0) {}
  SpecError(Kind kind, std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        kind_(kind), line_(line), column_(column) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

class UnknownSymbol : public Error {
public:
  explicit UnknownSymbol(const std::string& name) : Error("unknown symbol: " + name) {}
};

class UnknownReaction : public Error {
public:
  explicit UnknownReaction(const std::string& name) : Error("unknown reaction: " + name) {}
};

class InfeasibleReaction : public Error {
public:
  explicit InfeasibleReaction(const std::string& name)
      : Error("reaction " + name + " is not feasible in the given state") {}
};

class IndexOutOfRange : public Error {
public:
  IndexOutOfRange(std::size_t index, std::size_t size)
      : Error("state index " + std::to_string(index) + " out of range (trace has " +
              std::to_string(size) + " states)") {}
};

// Raised by bounded searches instead of silently truncating.
class BudgetExceeded : public Error {
public:
  BudgetExceeded(const std::string& what, std::size_t budget)
      : Error(what + " exceeded budget of " + std::to_string(budget)), budget_(budget) {}

  std::size_t budget() const noexcept { return budget_; }

private:
  std::size_t budget_;
};

class MalformedEntity : public Error {
public:
  using Error::Error;
};

class WitnessMismatch : public Error {
public:
  using Error::Error;
};

// Trace record stream errors; line is 1-based, 0 when not line-specific.
class TraceFormatError : public Error {
public:
  enum class Kind { malformed_record, invariant_violation };

  TraceFormatError(Kind kind, std::size_t line, const std::string& what)
      : Error(line ? "trace line " + std::to_string(line) + ": " + what : what), kind_(kind), line_(line) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

private:
  Kind kind_;
  std::size_t line_;
};

}  // namespace achem

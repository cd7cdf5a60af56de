#pragma once

#include <stdexcept>
#include <string>

namespace csync {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed `.aut` text or regex.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what), line_(0) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An automaton violates a structural invariant (out-of-range target, partial DCSA, ...).
class InvalidAutomaton : public Error {
 public:
  using Error::Error;
};

/// Operands are over different alphabets.
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

/// Input does not satisfy an operation's precondition (e.g. not commutative).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A search exhausted its SearchBudget. Never means "no word exists".
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(std::size_t explored)
      : Error("search budget exceeded after " + std::to_string(explored) +
              " configurations"),
        explored_(explored) {}

  std::size_t explored() const noexcept { return explored_; }

 private:
  std::size_t explored_;
};

}  // namespace csync

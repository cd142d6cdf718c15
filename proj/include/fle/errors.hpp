#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fle {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Lexical or syntax problem in a formula, rule, derivation or catalog text.
// `position` is a 0-based byte offset into the offending input.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

// An OccurrenceRef that does not resolve inside the subject formula.
class PathError : public Error {
public:
  using Error::Error;
};

// Use of bot/top under a language profile that excludes them, or a formula
// constant the current model does not designate.
class ProfileError : public Error {
public:
  using Error::Error;
};

// API misuse (e.g. a monotone extension axiom requested for a variable).
class UsageError : public Error {
public:
  using Error::Error;
};

// A configured resource bound was exceeded. CLI maps this family to exit 3.
class BudgetError : public Error {
public:
  using Error::Error;
};

// classify_oracle ran out of levels before witnessing membership.
class OracleBoundError : public BudgetError {
public:
  using BudgetError::BudgetError;
};

// Enumeration request beyond the configured carrier-size ceiling.
class CeilingError : public BudgetError {
public:
  using BudgetError::BudgetError;
};

// normalize_n / normalize_p precondition violation (input above the level).
class LevelError : public Error {
public:
  using Error::Error;
};

// Operation tables that fail the pointed commutative residuated lattice
// invariants, or a malformed catalog file.
class AlgebraError : public Error {
public:
  using Error::Error;
};

// Malformed derivation file or a derivation rejected by the checker when an
// accepted one was required.
class DeductionError : public Error {
public:
  using Error::Error;
};

}  // namespace fle

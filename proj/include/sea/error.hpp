#pragma once

#include <stdexcept>
#include <string>

namespace sea {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A finite table that is not even well-formed (index out of range,
// inconsistent duplicate entries). Distinct from an axiom violation.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// An element whose shape does not match the model family.
class TypeError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The family/operation combination has no registered rule.
class Unsupported : public Error {
 public:
  using Error::Error;
};

// Invalid user-supplied arguments (scalars out of range, non-additive maps).
class InputError : public Error {
 public:
  using Error::Error;
};

// A finite carrier larger than the enumeration budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), location_(where) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

}  // namespace sea

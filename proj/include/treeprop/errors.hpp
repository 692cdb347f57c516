#pragma once

#include <stdexcept>
#include <string>

namespace treeprop {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function table points outside the domain, a sort names an unknown level,
/// or a file does not follow the structure schema.
class MalformedStructure : public Error {
 public:
  using Error::Error;
};

class SignatureMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// B and C overlap outside their common substructure.
class OverlapError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// The coloring does not license a two-type amalgam.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// The generated L_v-parts of two extensions are not isomorphic over the base.
class TypeMismatch : public Error {
 public:
  using Error::Error;
};

class UnsupportedCase : public Error {
 public:
  using Error::Error;
};

class MalformedPattern : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

/// A search ran out of its node budget before reaching an answer.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, unsigned long long explored)
      : Error(what), explored_(explored) {}
  unsigned long long explored() const noexcept { return explored_; }

 private:
  unsigned long long explored_;
};

}  // namespace treeprop

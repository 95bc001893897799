#pragma once

#include <stdexcept>
#include <string>

namespace mlegendre {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a mathematical function (e.g. psi at x <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Caller violated a documented precondition (bad parameter set, bad m, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A hypothesis of the measure theorem does not hold for the instance.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Iterative numerics failed to settle.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Requested evaluation would need more working precision than allowed.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// An identity that must hold by construction failed: a bug, not user error.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace mlegendre

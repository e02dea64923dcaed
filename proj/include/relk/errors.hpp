#pragma once

#include <stdexcept>
#include <string>

namespace relk {

// Base for everything thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape or size disagreement between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input failed a membership precondition (not Hermitian, not idempotent,
// not a valid triple, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotIdempotentError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Iterative scheme exceeded its sweep budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Operand is singular on the corner where an inverse was requested.
class SingularOnSupportError : public Error {
 public:
  using Error::Error;
};

// Checked 64-bit integer arithmetic overflowed.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// A supplied homotopy/lift certificate failed verification.
class CertificateError : public Error {
 public:
  using Error::Error;
};

// Sampling too coarse for a safe winding count, or grid mismatch.
class GridError : public Error {
 public:
  using Error::Error;
};

// Operands live over incompatible algebras (blocks, domain, grid or level).
class AlgebraMismatchError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A path fails its required boundary value (cone condition, triple endpoint).
class EndpointMismatchError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A user-supplied lift does not satisfy the lifting identities.
class LiftError : public Error {
 public:
  using Error::Error;
};

// Problem is outside the computable regime of the engine.
class RegimeError : public Error {
 public:
  using Error::Error;
};

// Name or file could not be resolved / parsed.
class ResolveError : public Error {
 public:
  using Error::Error;
};

}  // namespace relk

#pragma once

#include <stdexcept>
#include <string>

namespace gtzw {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument hits a pole of Gamma (or of a product built from it).
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Two signatures/matrices/tables live on levels that do not fit the operation.
class LevelMismatchError : public Error {
 public:
  using Error::Error;
};

/// Exact integer arithmetic ran out of range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Parameter outside the domain where the operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Parameters fall outside the admissible set.
class NotAdmissibleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Adaptive support box hit its configured cap before reaching the mass target.
class GrowthLimitError : public Error {
 public:
  using Error::Error;
};

/// A value type invariant would be broken.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace gtzw

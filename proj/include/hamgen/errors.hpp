#pragma once

#include <stdexcept>
#include <string>

namespace hamgen {

/// Raised when the caller handed in something that violates a precondition
/// (bad dimension, non-Hermitian input, malformed file, oversized search).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a numerical kernel fails to meet its own postcondition.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotNormal : public InputError {
 public:
  using InputError::InputError;
};

class NotHermitian : public InputError {
 public:
  using InputError::InputError;
};

class NotUnitary : public InputError {
 public:
  using InputError::InputError;
};

class BadDimension : public InputError {
 public:
  using InputError::InputError;
};

class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};

class ZeroTime : public InputError {
 public:
  using InputError::InputError;
};

class SearchSpaceTooLarge : public InputError {
 public:
  using InputError::InputError;
};

class ParseError : public InputError {
 public:
  using InputError::InputError;
};

class ConvergenceFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace hamgen

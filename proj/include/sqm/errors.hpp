#pragma once

#include <stdexcept>
#include <string>

namespace sqm {

/// Input is outside an operation's contract. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Propagator evaluated at an excluded time pair (t = t', or a caustic).
class SingularTimeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A computation could not meet its tolerance. The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A reduction formula would divide by a vanishing factor.
class DegenerateConfigurationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The conditioning operator A has Tr A*A = 0.
class ConditioningOnNullError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace sqm

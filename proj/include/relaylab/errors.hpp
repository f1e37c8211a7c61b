#pragma once

#include <stdexcept>
#include <string>

namespace relaylab {

/// Argument outside the domain of an operation (negative rate, p outside (0,1), ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Root finder called on an interval whose endpoints do not bracket a root.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive integration could not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A set handed to the blow-up experiments has Gaussian measure below 2^(-n a).
class MeasurePreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace relaylab

#pragma once

#include <stdexcept>
#include <string>

namespace salemlab {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Grid shape or parameter combination that cannot be represented
// (divisibility, gcd, atom count).
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested array would exceed the configured cell budget.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Floating-point route could not certify an exact integer result and no
// exact fallback was affordable.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An identity that must hold exactly was violated. Always a bug.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace salemlab

#pragma once

#include <stdexcept>
#include <string>

namespace memrelax {

/// Argument outside the domain of an operation (negative time, x outside [0,1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The averaged circuit equation was requested for a drive that does not keep
/// the memristor voltage beyond its thresholds.
class ValidityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Request that is well-formed but meaningless for the given configuration,
/// e.g. a relaxation time of an unstable fixed point.
class InvalidRequest : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// kappa == p: the circuit fixed point sits at infinity.
class DegenerateFixedPoint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Root finding or fitting failed to produce a trustworthy number.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FitError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace memrelax

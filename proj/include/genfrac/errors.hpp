#pragma once

#include <stdexcept>
#include <string>

namespace genfrac {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical routine could not certify its own accuracy target.
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed value violates a property that must hold (e.g. u outside [0,1]).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature refinement stalled.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No spectral cutoff satisfied the discrepancy criterion.
class DiscrepancyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input (configuration files, expressions, kernel specs).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace genfrac

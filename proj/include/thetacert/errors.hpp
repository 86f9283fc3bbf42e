#pragma once

#include <stdexcept>
#include <string>

namespace thetacert {

/// Malformed input: unknown lattice name, bad dimension, bad JSON field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument outside the mathematical domain of an operation (t <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Enumeration or pivot budget exhausted.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shell data does not reach far enough to certify the requested tolerance.
class InsufficientShells : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace thetacert

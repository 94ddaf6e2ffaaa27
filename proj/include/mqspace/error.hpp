#pragma once

#include <stdexcept>
#include <string>

namespace mqspace {

/// Failure classes. Each maps onto one CLI exit code.
enum class ErrorKind {
  Config,     // malformed input, labels, indices, schemas
  Numerical,  // tolerance violation or rejected precondition with a residual
  Invariant,  // internal invariant breach
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string reason, const std::string& message)
      : std::runtime_error(message), kind_(kind), reason_(std::move(reason)) {}

  ErrorKind kind() const { return kind_; }

  /// Short machine-readable tag, e.g. "not_zero_quantum".
  const std::string& reason() const { return reason_; }

 private:
  ErrorKind kind_;
  std::string reason_;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string reason, const std::string& message)
      : Error(ErrorKind::Config, std::move(reason), message) {}
};

/// Carries the measured residual that failed the check.
class NumericalError : public Error {
 public:
  NumericalError(std::string reason, const std::string& message, double residual)
      : Error(ErrorKind::Numerical, std::move(reason), message), residual_(residual) {}

  double residual() const { return residual_; }

 private:
  double residual_;
};

class InvariantError : public Error {
 public:
  InvariantError(std::string reason, const std::string& message)
      : Error(ErrorKind::Invariant, std::move(reason), message) {}
};

}  // namespace mqspace

#pragma once

#include <stdexcept>
#include <string>

namespace sps {

/// Invalid user-supplied configuration. `field()` names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, std::string message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)), message_(std::move(message)) {}

  const std::string& field() const noexcept { return field_; }
  /// The message without the field prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string field_;
  std::string message_;
};

/// An iteration ran out of its budget. Carries the last residual seen.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& message, double residual)
      : std::runtime_error(message), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// NaN/overflow, a collapsed normalization, or a singular linear system.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sps

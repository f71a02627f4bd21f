#pragma once

#include <stdexcept>
#include <string>

namespace ersim {

/// Bad or missing configuration input. The message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Base for failures of the numerical engine (quadrature, time stepping).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double estimate, double error_estimate)
      : NumericalError(what), estimate_(estimate), error_(error_estimate) {}
  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

/// Time step too large for the oracle integrator, or runaway growth detected.
class StabilityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A correlation handed to an operation has the wrong operator ordering,
/// or an anti-normally ordered density dips below the vacuum floor.
class OrderingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace ersim

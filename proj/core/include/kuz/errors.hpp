#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kuz {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments or configuration (CLI exit code 1).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Failures of the numerics at run time (CLI exit code 2).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class SolverError : public NumericalError {
 public:
  SolverError(const std::string& what, double residual, std::ptrdiff_t row = -1)
      : NumericalError(what), residual_(residual), row_(row) {}

  /// Last relative residual reached, or NaN when not applicable.
  double residual() const noexcept { return residual_; }
  /// Offending pivot row for direct solves, -1 otherwise.
  std::ptrdiff_t row() const noexcept { return row_; }

 private:
  double residual_;
  std::ptrdiff_t row_;
};

/// The leading coefficient 1 + kappa * v dropped below the configured floor.
class DegeneracyError : public NumericalError {
 public:
  DegeneracyError(const std::string& what, double value, double x, double y,
                  long step = -1, double time = 0.0)
      : NumericalError(what), value_(value), x_(x), y_(y), step_(step), time_(time) {}

  double value() const noexcept { return value_; }
  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  long step() const noexcept { return step_; }
  double time() const noexcept { return time_; }

 private:
  double value_;
  double x_;
  double y_;
  long step_;
  double time_;
};

/// File system failures (CLI exit code 3).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace kuz

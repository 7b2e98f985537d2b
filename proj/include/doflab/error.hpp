#pragma once

#include <stdexcept>
#include <string>

namespace doflab {

// Bad input or configuration. Maps to CLI exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Solver or estimation failure. Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double residual)
      : NumericalError(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class Unsupported : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidArgument(msg);
}

}  // namespace doflab

#pragma once

#include <stdexcept>
#include <string>

namespace fshell {

// Failures of a numerical method on valid input (CLI exit code 3).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NewtonFailure : NumericalError {
  double last_residual;
  NewtonFailure(const std::string& what, double r) : NumericalError(what), last_residual(r) {}
};

struct EllipticityLoss : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace fshell

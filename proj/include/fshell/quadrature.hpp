#pragma once

#include <functional>
#include <vector>

namespace fshell {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

// Adaptive 15-point Gauss–Kronrod on [a, b] to an absolute tolerance.
// Breakpoints are placed at sign changes of a sampled derivative of f.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol);

}  // namespace fshell

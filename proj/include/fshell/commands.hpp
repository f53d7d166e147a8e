#pragma once

#include <string>
#include <vector>

#include "fshell/config.hpp"
#include "fshell/table.hpp"

namespace fshell {

// Loads P and F* from both models over a sweep of lambda_a or lambda_z.
// threads = 0 uses the hardware concurrency.
ResultTable run_inflate(const RunConfig& cfg, unsigned threads = 0);

// Base state of a vibration load case: a base given by P is inflated with the
// exact solution, one given by lambda_a takes its P from the exact solution.
TubeState base_state(const RunConfig& cfg);

// Plane-strain frequencies for n_min..n_max at each base case.
ResultTable run_vibrate(const RunConfig& cfg, unsigned threads = 0);

struct Check {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<Check> checks;

  bool passed() const;
  std::string to_text() const;
};

// Runs the invariant suites for the configured geometry, material and load.
VerifyReport run_verify(const RunConfig& cfg);

}  // namespace fshell

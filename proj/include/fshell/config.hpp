#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fshell/material.hpp"
#include "fshell/tube.hpp"

namespace fshell {

struct ConfigError : std::runtime_error {
  int line = 0;  // 0 when the problem is not tied to one line
  ConfigError(const std::string& msg, int line_no);
};

struct SweepSpec {
  std::string variable;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  std::vector<double> points() const;
  bool operator==(const SweepSpec&) const = default;
};

// Values are kept in the units of the config file (mm, kPa, degrees, g/cm³).
struct RunConfig {
  double A_mm = 1.43;
  double thickness_mm = 0.26;
  double L_mm = 10.0;

  double c_kPa = 3.0;
  double k1_kPa = 2.3632;
  double k2 = 0.8393;
  double phi_deg = 29.0;
  double rho_g_cm3 = 1.19;

  std::optional<double> P_kPa;
  std::optional<double> lambda_a;
  double lambda_z = 1.0;

  int n_min = 0;
  int n_max = 3;

  std::optional<SweepSpec> sweep;

  TubeGeometry geometry() const;
  HgoMaterial material() const;

  bool operator==(const RunConfig&) const = default;
};

// Names accepted as sweep variables, matching the config keys.
const std::vector<std::string>& sweep_variables();

// Copy of the config with one variable set; setting P_kPa clears lambda_a
// and the other way round.
RunConfig with_value(const RunConfig& cfg, const std::string& variable, double value);

RunConfig parse_config(std::string_view text);
std::string format_config(const RunConfig& cfg);

// "VAR=START:STOP:STEP"
SweepSpec parse_sweep(std::string_view text);

// Throws ConfigError (line 0) if the values are inconsistent.
void validate(const RunConfig& cfg);

}  // namespace fshell

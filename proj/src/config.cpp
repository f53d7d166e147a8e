#include "fshell/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <system_error>

namespace fshell {

ConfigError::ConfigError(const std::string& msg, int line_no)
    : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg), line(line_no) {}

std::vector<double> SweepSpec::points() const {
  std::vector<double> out;
  const double span = (stop - start) / step;
  const auto count = static_cast<long long>(std::floor(span + 1e-9)) + 1;
  out.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  if (!out.empty() && std::abs(out.back() - stop) <= 1e-9 * std::abs(step)) out.back() = stop;
  return out;
}

TubeGeometry RunConfig::geometry() const {
  TubeGeometry g;
  g.A = A_mm * 1e-3;
  g.h = 0.5 * thickness_mm * 1e-3;
  g.L = L_mm * 1e-3;
  return g;
}

HgoMaterial RunConfig::material() const {
  HgoMaterial m;
  m.c = c_kPa * 1e3;
  m.k1 = k1_kPa * 1e3;
  m.k2 = k2;
  m.phi = phi_deg * M_PI / 180.0;
  m.rho = rho_g_cm3 * 1e3;
  return m;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_exact(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_real(std::string_view s, const std::string& key, int line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v))
    throw ConfigError(key + ": expected a finite number, got '" + std::string(s) + "'", line);
  return v;
}

int parse_int(std::string_view s, const std::string& key, int line) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw ConfigError(key + ": expected an integer, got '" + std::string(s) + "'", line);
  return v;
}

struct PartialSweep {
  std::optional<std::string> variable;
  std::optional<double> start, stop, step;
};

using Setter = std::function<void(RunConfig&, PartialSweep&, std::string_view, const std::string&, int)>;

Setter real_field(double RunConfig::*field) {
  return [field](RunConfig& c, PartialSweep&, std::string_view v, const std::string& k, int line) {
    c.*field = parse_real(v, k, line);
  };
}

Setter optional_field(std::optional<double> RunConfig::*field) {
  return [field](RunConfig& c, PartialSweep&, std::string_view v, const std::string& k, int line) {
    c.*field = parse_real(v, k, line);
  };
}

Setter int_field(int RunConfig::*field) {
  return [field](RunConfig& c, PartialSweep&, std::string_view v, const std::string& k, int line) {
    c.*field = parse_int(v, k, line);
  };
}

Setter sweep_real(std::optional<double> PartialSweep::*field) {
  return [field](RunConfig&, PartialSweep& s, std::string_view v, const std::string& k, int line) {
    s.*field = parse_real(v, k, line);
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"geometry.A_mm", real_field(&RunConfig::A_mm)},
      {"geometry.thickness_mm", real_field(&RunConfig::thickness_mm)},
      {"geometry.L_mm", real_field(&RunConfig::L_mm)},
      {"material.c_kPa", real_field(&RunConfig::c_kPa)},
      {"material.k1_kPa", real_field(&RunConfig::k1_kPa)},
      {"material.k2", real_field(&RunConfig::k2)},
      {"material.phi_deg", real_field(&RunConfig::phi_deg)},
      {"material.rho_g_cm3", real_field(&RunConfig::rho_g_cm3)},
      {"load.P_kPa", optional_field(&RunConfig::P_kPa)},
      {"load.lambda_a", optional_field(&RunConfig::lambda_a)},
      {"load.lambda_z", real_field(&RunConfig::lambda_z)},
      {"vibration.n_min", int_field(&RunConfig::n_min)},
      {"vibration.n_max", int_field(&RunConfig::n_max)},
      {"sweep.variable",
       [](RunConfig&, PartialSweep& s, std::string_view v, const std::string&, int) { s.variable = std::string(v); }},
      {"sweep.start", sweep_real(&PartialSweep::start)},
      {"sweep.stop", sweep_real(&PartialSweep::stop)},
      {"sweep.step", sweep_real(&PartialSweep::step)},
  };
  return table;
}

// Reports a problem with the named key; the parser maps keys to lines.
using Reporter = std::function<void(const std::string& key, const std::string& msg)>;

void check_sweep(const SweepSpec& s, const Reporter& fail) {
  const auto& vars = sweep_variables();
  if (std::find(vars.begin(), vars.end(), s.variable) == vars.end())
    fail("sweep.variable", "unknown sweep variable '" + s.variable + "'");
  if (!(s.step != 0.0)) fail("sweep.step", "sweep step must be nonzero");
  const double span = (s.stop - s.start) / s.step;
  if (!(span >= -1e-9)) fail("sweep.step", "sweep step points away from stop");
  if (!(span <= 1e6)) fail("sweep.step", "sweep has more than a million points");
}

void check(const RunConfig& c, const Reporter& fail) {
  if (!(c.A_mm > 0.0)) fail("geometry.A_mm", "A_mm must be positive");
  if (!(c.thickness_mm > 0.0)) fail("geometry.thickness_mm", "thickness_mm must be positive");
  if (!(c.thickness_mm < c.A_mm)) fail("geometry.thickness_mm", "wall thickness must be smaller than A_mm");
  if (!(c.L_mm > 0.0)) fail("geometry.L_mm", "L_mm must be positive");
  if (!(c.c_kPa > 0.0)) fail("material.c_kPa", "c_kPa must be positive");
  if (!(c.k1_kPa >= 0.0)) fail("material.k1_kPa", "k1_kPa must be non-negative");
  if (!(c.k2 > 0.0)) fail("material.k2", "k2 must be positive");
  if (!(c.phi_deg >= 0.0 && c.phi_deg <= 90.0)) fail("material.phi_deg", "phi_deg must lie in [0, 90]");
  if (!(c.rho_g_cm3 > 0.0)) fail("material.rho_g_cm3", "rho_g_cm3 must be positive");
  if (c.P_kPa && c.lambda_a) fail("load.lambda_a", "load.P_kPa and load.lambda_a are mutually exclusive");
  if (c.lambda_a && !(*c.lambda_a > 0.0)) fail("load.lambda_a", "lambda_a must be positive");
  if (!(c.lambda_z > 0.0)) fail("load.lambda_z", "lambda_z must be positive");
  if (c.n_min < 0) fail("vibration.n_min", "n_min must be non-negative");
  if (c.n_max < c.n_min) fail("vibration.n_max", "n_max must not be below n_min");
  if (c.sweep) check_sweep(*c.sweep, fail);
}

}  // namespace

const std::vector<std::string>& sweep_variables() {
  static const std::vector<std::string> vars = {"A_mm",    "thickness_mm", "c_kPa", "k1_kPa",   "k2",      "phi_deg",
                                                "rho_g_cm3", "P_kPa",      "lambda_a", "lambda_z"};
  return vars;
}

RunConfig with_value(const RunConfig& cfg, const std::string& variable, double value) {
  RunConfig c = cfg;
  if (variable == "A_mm") c.A_mm = value;
  else if (variable == "thickness_mm") c.thickness_mm = value;
  else if (variable == "c_kPa") c.c_kPa = value;
  else if (variable == "k1_kPa") c.k1_kPa = value;
  else if (variable == "k2") c.k2 = value;
  else if (variable == "phi_deg") c.phi_deg = value;
  else if (variable == "rho_g_cm3") c.rho_g_cm3 = value;
  else if (variable == "P_kPa") {
    c.P_kPa = value;
    c.lambda_a.reset();
  } else if (variable == "lambda_a") {
    c.lambda_a = value;
    c.P_kPa.reset();
  } else if (variable == "lambda_z") c.lambda_z = value;
  else throw ConfigError("unknown sweep variable '" + variable + "'", 0);
  return c;
}

void validate(const RunConfig& cfg) {
  check(cfg, [](const std::string& key, const std::string& msg) { throw ConfigError(key + ": " + msg, 0); });
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  PartialSweep sweep;
  std::map<std::string, int> seen;

  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'section.key = value'", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("unknown key '" + key + "'", line_no);
    if (seen.count(key)) throw ConfigError("duplicate key '" + key + "'", line_no);
    if (value.empty()) throw ConfigError(key + ": missing value", line_no);
    seen[key] = line_no;
    it->second(cfg, sweep, value, key, line_no);
  }

  auto line_of = [&](const std::string& key) {
    const auto it = seen.find(key);
    return it == seen.end() ? 0 : it->second;
  };

  if (sweep.variable || sweep.start || sweep.stop || sweep.step) {
    int first = 0;
    for (const char* k : {"sweep.variable", "sweep.start", "sweep.stop", "sweep.step"})
      if (const int l = line_of(k); l && (!first || l < first)) first = l;
    if (!sweep.variable) throw ConfigError("missing required key 'sweep.variable'", first);
    if (!sweep.start) throw ConfigError("missing required key 'sweep.start'", first);
    if (!sweep.stop) throw ConfigError("missing required key 'sweep.stop'", first);
    if (!sweep.step) throw ConfigError("missing required key 'sweep.step'", first);
    cfg.sweep = SweepSpec{*sweep.variable, *sweep.start, *sweep.stop, *sweep.step};
  }

  check(cfg, [&](const std::string& key, const std::string& msg) { throw ConfigError(msg, line_of(key)); });
  return cfg;
}

std::string format_config(const RunConfig& c) {
  std::string out;
  auto put = [&](const char* key, const std::string& v) {
    out += key;
    out += " = ";
    out += v;
    out += '\n';
  };
  put("geometry.A_mm", format_exact(c.A_mm));
  put("geometry.thickness_mm", format_exact(c.thickness_mm));
  put("geometry.L_mm", format_exact(c.L_mm));
  put("material.c_kPa", format_exact(c.c_kPa));
  put("material.k1_kPa", format_exact(c.k1_kPa));
  put("material.k2", format_exact(c.k2));
  put("material.phi_deg", format_exact(c.phi_deg));
  put("material.rho_g_cm3", format_exact(c.rho_g_cm3));
  if (c.P_kPa) put("load.P_kPa", format_exact(*c.P_kPa));
  if (c.lambda_a) put("load.lambda_a", format_exact(*c.lambda_a));
  put("load.lambda_z", format_exact(c.lambda_z));
  put("vibration.n_min", std::to_string(c.n_min));
  put("vibration.n_max", std::to_string(c.n_max));
  if (c.sweep) {
    put("sweep.variable", c.sweep->variable);
    put("sweep.start", format_exact(c.sweep->start));
    put("sweep.stop", format_exact(c.sweep->stop));
    put("sweep.step", format_exact(c.sweep->step));
  }
  return out;
}

SweepSpec parse_sweep(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ConfigError("--sweep expects VAR=START:STOP:STEP", 0);
  SweepSpec s;
  s.variable = std::string(trim(text.substr(0, eq)));
  std::string_view rest = text.substr(eq + 1);
  double* fields[] = {&s.start, &s.stop, &s.step};
  for (int i = 0; i < 3; ++i) {
    const auto colon = rest.find(':');
    if ((i < 2) == (colon == std::string_view::npos)) throw ConfigError("--sweep expects VAR=START:STOP:STEP", 0);
    *fields[i] = parse_real(trim(rest.substr(0, colon)), "--sweep", 0);
    rest = i < 2 ? rest.substr(colon + 1) : std::string_view{};
  }
  check_sweep(s, [](const std::string&, const std::string& msg) { throw ConfigError("--sweep: " + msg, 0); });
  return s;
}

}  // namespace fshell

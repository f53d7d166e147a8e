#include "fshell/commands.hpp"

#include <cstdint>
#include <utility>

#include "fshell/errors.hpp"
#include "fshell/parallel.hpp"
#include "fshell/tube.hpp"
#include "fshell/vibration.hpp"

namespace fshell {

namespace {

struct SweepPlan {
  std::string variable;
  std::vector<double> values;
  bool active = false;
};

std::string point_label(const SweepPlan& plan, double v) {
  return plan.variable + " = " + format_real(v);
}

// Runs fn on one sweep point, attaching the point to numerical failures.
template <class Fn>
auto at_point(const SweepPlan& plan, double v, Fn fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(e.what()) + " (at " + point_label(plan, v) + ")", 0);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(e.what()) + " (at " + point_label(plan, v) + ")");
  }
}

RunConfig point_config(const RunConfig& cfg, const SweepPlan& plan, double v) {
  RunConfig c = plan.active ? with_value(cfg, plan.variable, v) : cfg;
  c.sweep.reset();
  validate(c);
  return c;
}

}  // namespace

TubeState base_state(const RunConfig& c) {
  const TubeGeometry g = c.geometry();
  const HgoMaterial m = c.material();
  double la = 0.0, P = 0.0;
  if (c.P_kPa) {
    P = *c.P_kPa * 1e3;
    la = solve_inflation(P, c.lambda_z, g, m, LoadModel::exact);
  } else if (c.lambda_a) {
    la = *c.lambda_a;
    P = exact_loads(la, c.lambda_z, g, m).P;
  } else {
    throw ConfigError("missing required key 'load.P_kPa' or 'load.lambda_a'", 0);
  }
  return closed_recurrence(la, c.lambda_z, P, g, m);
}

ResultTable run_inflate(const RunConfig& cfg, unsigned threads) {
  validate(cfg);
  SweepPlan plan;
  if (cfg.sweep) {
    plan = {cfg.sweep->variable, cfg.sweep->points(), true};
    if (plan.variable != "lambda_a" && plan.variable != "lambda_z")
      throw ConfigError("inflate sweeps lambda_a or lambda_z, not " + plan.variable, 0);
    if (plan.variable == "lambda_z" && !cfg.lambda_a)
      throw ConfigError("missing required key 'load.lambda_a' for a lambda_z sweep", 0);
  } else {
    if (!cfg.lambda_a) throw ConfigError("missing required key 'load.lambda_a' for inflate", 0);
    plan = {"lambda_a", {*cfg.lambda_a}, false};
  }

  ResultTable t;
  t.columns = {plan.variable, "P_asym_kPa", "P_exact_kPa", "Fstar_asym_kPa", "Fstar_exact_kPa"};
  const auto rows = parallel_map(
      plan.values.size(),
      [&](std::size_t i) {
        const double v = plan.values[i];
        return at_point(plan, v, [&] {
          const RunConfig c = point_config(cfg, plan, v);
          const TubeGeometry g = c.geometry();
          const HgoMaterial m = c.material();
          const LoadResult a = asymptotic_loads(*c.lambda_a, c.lambda_z, g, m);
          const LoadResult e = exact_loads(*c.lambda_a, c.lambda_z, g, m);
          return std::vector<Cell>{v, a.P * 1e-3, e.P * 1e-3, a.Fstar * 1e-3, e.Fstar * 1e-3};
        });
      },
      threads);
  for (const auto& r : rows) t.add_row(r);
  return t;
}

ResultTable run_vibrate(const RunConfig& cfg, unsigned threads) {
  validate(cfg);
  SweepPlan plan;
  if (cfg.sweep) plan = {cfg.sweep->variable, cfg.sweep->points(), true};
  else plan = {"", {0.0}, false};
  if (!cfg.P_kPa && !cfg.lambda_a && !(plan.active && (plan.variable == "P_kPa" || plan.variable == "lambda_a")))
    throw ConfigError("missing required key 'load.P_kPa' or 'load.lambda_a' for vibrate", 0);

  struct Base {
    TubeState state;
    TubeGeometry geom;
    HgoMaterial mat;
  };
  const auto bases = parallel_map(
      plan.values.size(),
      [&](std::size_t i) {
        const double v = plan.values[i];
        return at_point(plan, v, [&] {
          const RunConfig c = point_config(cfg, plan, v);
          return Base{base_state(c), c.geometry(), c.material()};
        });
      },
      threads);

  const int modes = cfg.n_max - cfg.n_min + 1;
  const std::size_t jobs = bases.size() * static_cast<std::size_t>(modes);
  const auto results = parallel_map(
      jobs,
      [&](std::size_t k) {
        const std::size_t i = k / static_cast<std::size_t>(modes);
        const int n = cfg.n_min + static_cast<int>(k % static_cast<std::size_t>(modes));
        return at_point(plan, plan.values[i], [&] {
          const Base& b = bases[i];
          return frequencies(b.state, n, b.geom, b.mat);
        });
      },
      threads);

  ResultTable t;
  if (plan.active) t.columns.push_back(plan.variable);
  for (const char* c : {"n", "branch", "omega_sq", "omega_star", "is_real"}) t.columns.emplace_back(c);
  for (std::size_t k = 0; k < jobs; ++k) {
    const double v = plan.values[k / static_cast<std::size_t>(modes)];
    for (const ModeResult& r : results[k]) {
      std::vector<Cell> row;
      if (plan.active) row.emplace_back(v);
      row.emplace_back(static_cast<std::int64_t>(r.n));
      row.emplace_back(branch_name(r.branch));
      row.emplace_back(r.omega_sq);
      row.emplace_back(r.omega_star);
      row.emplace_back(static_cast<std::int64_t>(r.is_real ? 1 : 0));
      t.add_row(std::move(row));

      std::string where = "n = " + std::to_string(r.n) + ", " + branch_name(r.branch);
      if (plan.active) where = point_label(plan, v) + ", " + where;
      if (r.ambiguous) t.notes.push_back("warning: branch labels may be swapped (" + where + ")");
      if (r.degenerate) t.notes.push_back("warning: D2 solved as affine, leading coefficient vanishes (" + where + ")");
    }
  }
  return t;
}

}  // namespace fshell

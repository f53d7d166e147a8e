#include <algorithm>
#include <cmath>
#include <sstream>

#include "fshell/commands.hpp"
#include "fshell/cylinder.hpp"
#include "fshell/errors.hpp"
#include "fshell/vibration.hpp"

namespace fshell {

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  for (const Check& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << ": measured " << format_real(c.measured) << ", tolerance "
       << format_real(c.tolerance);
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << '\n';
  }
  os << (passed() ? "all checks passed" : "some checks failed") << '\n';
  return os.str();
}

namespace {

Check upper_bound(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured, tol, measured <= tol, std::move(detail)};
}

double rel(double a, double b, double floor) { return std::abs(a - b) / std::max(std::abs(b), floor); }

const double grid_la[] = {0.8, 1.0, 1.2, 1.4, 1.6, 1.8};
const double grid_lz[] = {1.0, 1.2, 1.4, 1.6, 1.8};

struct JetChecks {
  double closed_form = 0.0;
  double incompressibility = 0.0;
  double field = 0.0;
  double symmetry = 0.0;
};

JetChecks jet_checks(const TubeGeometry& g, const HgoMaterial& m, double P) {
  JetChecks r;
  const double A = g.A, c = m.c;
  for (double la : grid_la)
    for (double lz : grid_lz) {
      const TubeState s = closed_recurrence(la, lz, P, g, m);
      const CylinderShell sh = cylinder_shell(s, g, m);
      const MidsurfaceData<double> d = cylinder_base_data(sh);
      const ThetaDerivation D{};
      const ThicknessJet<double> jet = cylinder_jet(d, D, m, 2);

      r.closed_form = std::max({r.closed_form, rel(jet.x[1][0], s.r1, 1.0), rel(jet.x[2][0], s.r2, 1.0 / A),
                                rel(jet.p[0], s.p0, c), rel(jet.p[1], s.p1, c / A)});

      const auto inc = incompressibility_residuals(jet);
      r.incompressibility =
          std::max({r.incompressibility, std::abs(inc[0]), std::abs(inc[1]) * A, std::abs(inc[2]) * A * A});

      const SurfacePoint& pt = d.point;
      const Mat3d dS0 = D(jet.S[0]);
      const Order2Gradients<double> g2{surface_gradient(pt, D(jet.x[2]), Vec3d{}), surface_divergence(pt, D(jet.S[1])),
                                       transpose(dS0) * (pt.k * pt.gu[0])};
      const Vec3d z0 = field_residual_z0(d, jet, surface_divergence(pt, dS0), m);
      const Vec3d z1 = field_residual_z1(d, jet, g2, m);
      r.field = std::max({r.field, max_abs(z0) * A / c, max_abs(z1) * A * A / c});

      const Mat3d sigma = jet.F[0] * jet.S[0];
      r.symmetry = std::max(r.symmetry, max_abs(sigma - transpose(sigma)) / std::max(max_abs(sigma), c));
    }
  return r;
}

double identity_gap(const TubeGeometry& g, const HgoMaterial& m) {
  double worst = 0.0;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      const double la = 0.8 + 0.1 * i, lz = 1.0 + 0.1 * j;
      const LoadResult a = asymptotic_loads(la, lz, g, m);
      const LoadResult e = exact_two_term(la, lz, g, m);
      worst = std::max({worst, std::abs(a.P - e.P) / m.c, std::abs(a.Fstar - e.Fstar) / m.c});
    }
  return worst;
}

Check convergence(const TubeGeometry& base, const HgoMaterial& m) {
  double err[4];
  for (int k = 0; k < 4; ++k) {
    TubeGeometry g = base;
    g.h = 0.5 * (0.2 / std::pow(2.0, k)) * g.A;
    err[k] = std::abs(exact_loads(1.3, 1.2, g, m).P - asymptotic_loads(1.3, 1.2, g, m).P);
  }
  double lo = 1e300, hi = 0.0;
  std::ostringstream detail;
  detail << "ratios";
  for (int k = 0; k < 3; ++k) {
    const double q = err[k] / err[k + 1];
    lo = std::min(lo, q);
    hi = std::max(hi, q);
    detail << ' ' << format_real(q);
  }
  detail << ", required in [6, 10]";
  return {"convergence_order", lo, 6.0, lo >= 6.0 && hi <= 10.0, detail.str()};
}

double sparsity(const TubeState& s, const TubeGeometry& g, const HgoMaterial& m) {
  double worst = 0.0;
  for (int n = 0; n <= 3; ++n) {
    const ModeMatrix mm = assemble_mode_matrix(s, n, g, m);
    double scale = 0.0;
    for (const auto& row : mm.m)
      for (const ModeEntry& e : row) scale = std::max({scale, std::abs(e.constant), std::abs(e.slope) * m.c / m.rho});
    auto size = [&](int i, int j) {
      const ModeEntry& e = mm.m[i][j];
      return std::max(std::abs(e.constant), std::abs(e.slope) * m.c / m.rho) / scale;
    };
    worst = std::max({worst, size(0, 1), size(1, 0), size(1, 2), size(2, 1)});
    if (n == 0) worst = std::max({worst, size(0, 2), size(2, 0)});
  }
  return worst;
}

double axial_linearity(const TubeState& s, const TubeGeometry& g, const HgoMaterial& m) {
  const double w1 = frequencies(s, 1, g, m)[0].omega_star;
  double worst = 0.0;
  for (int n = 2; n <= 4; ++n) worst = std::max(worst, rel(frequencies(s, n, g, m)[0].omega_star / n, w1, 1e-300));
  return worst;
}

// |ω*| with the sign of ω² dropped.
double abs_omega_star(double omega_sq, const TubeGeometry& g, const HgoMaterial& m) {
  return omega_star(std::abs(omega_sq), g, m);
}

double rigid_body(const TubeGeometry& g, const HgoMaterial& m) {
  const TubeState s = closed_recurrence(1.0, 1.0, 0.0, g, m);
  const auto r0 = frequencies(s, 0, g, m);
  const auto r1 = frequencies(s, 1, g, m);
  return std::max(abs_omega_star(r0[0].omega_sq, g, m),
                  std::min(abs_omega_star(r1[1].omega_sq, g, m), abs_omega_star(r1[2].omega_sq, g, m)));
}

template <class Fn>
void run_check(VerifyReport& rep, const std::string& name, Fn fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    rep.checks.push_back({name, NAN, 0.0, false, std::string("raised: ") + e.what()});
  }
}

}  // namespace

VerifyReport run_verify(const RunConfig& cfg) {
  validate(cfg);
  const TubeGeometry g = cfg.geometry();
  const HgoMaterial m = cfg.material();
  VerifyReport rep;

  run_check(rep, "recurrence", [&] {
    const double P = cfg.P_kPa ? *cfg.P_kPa * 1e3 : 0.0;
    const JetChecks j = jet_checks(g, m, P);
    rep.checks.push_back(upper_bound("recurrence_vs_closed_form", j.closed_form, 1e-10, "relative, 6x5 stretch grid"));
    rep.checks.push_back(upper_bound("incompressibility_residual", j.incompressibility, 1e-10, "scaled by A"));
    rep.checks.push_back(upper_bound("field_equation_residual", j.field, 1e-9, "scaled by c/A"));
    rep.checks.push_back(upper_bound("cauchy_symmetry", j.symmetry, 1e-9, "relative"));
  });
  run_check(rep, "asymptotic_exact_identity", [&] {
    rep.checks.push_back(upper_bound("asymptotic_exact_identity", identity_gap(g, m), 1e-9, "in units of c, 9x9 grid"));
  });
  run_check(rep, "convergence_order", [&] { rep.checks.push_back(convergence(g, m)); });

  run_check(rep, "mode_matrix", [&] {
    RunConfig load = cfg;
    if (!load.P_kPa && !load.lambda_a) load.lambda_a = 1.2;
    const TubeState s = base_state(load);
    rep.checks.push_back(upper_bound("mode_matrix_sparsity", sparsity(s, g, m), 1e-12, "relative, n = 0..3"));
    rep.checks.push_back(upper_bound("axial_linearity", axial_linearity(s, g, m), 1e-9, "relative, n = 2..4"));
  });
  run_check(rep, "rigid_body_modes", [&] {
    rep.checks.push_back(upper_bound("rigid_body_modes", rigid_body(g, m), 1e-6, "omega* at P = 0, lambda_z = 1"));
  });
  return rep;
}

}  // namespace fshell

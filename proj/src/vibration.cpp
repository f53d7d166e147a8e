#include "fshell/vibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fshell {

std::string branch_name(Branch b) {
  switch (b) {
    case Branch::axial: return "axial";
    case Branch::circumferential_radial: return "circumferential-radial";
    case Branch::radial_circumferential: return "radial-circumferential";
  }
  return "unknown";
}

CylinderShell cylinder_shell(const TubeState& base, const TubeGeometry& geom, const HgoMaterial& mat) {
  return {geom.A, geom.h, base.lambda_z, base.P, mat, base.r0};
}

Vec3<Perturb> mode_residual(const CylinderShell& sh, double n, double omega_sq, const std::array<cplx, 3>& uvw) {
  const SurfacePoint pt = chart_frame(SurfaceChart::cylinder(sh.A), 0.0, 0.0);
  const ThetaDerivation D{n};
  const TimeDerivation dt{omega_sq};

  const Vec3<Perturb> x0{Perturb(sh.r0, uvw[2]), Perturb(0.0, uvw[0]), Perturb(0.0, uvw[1])};
  const MidsurfaceData<Perturb> d = cylinder_data(sh, pt, x0, D(x0), dt(x0));
  const ThicknessJet<Perturb> jet = cylinder_jet(d, D, sh.mat, 1);

  const ShellFields<Perturb> f = shell_fields(sh, d, jet, dt);
  const Vec3<Perturb> bend = bending_vector(pt, D(f.S1_t));
  const Vec3<Perturb> r = shell_residual(sh, pt, f, D(f.S_bar), D(f.flux), D(bend));
  return {r[1], r[2], r[0]};
}

ModeMatrix assemble_mode_matrix(const CylinderShell& sh, double n) {
  ModeMatrix mm;
  mm.n = n;
  // Second evaluation at a frequency where inertia and stiffness are of the
  // same size, so the difference does not cancel.
  const double w_ref = sh.mat.c / (sh.mat.rho * 4.0 * sh.h * sh.h) * std::max(1.0, n * n);
  for (std::size_t j = 0; j < 3; ++j) {
    std::array<cplx, 3> e{};
    e[j] = 1.0;
    const Vec3<Perturb> r0 = mode_residual(sh, n, 0.0, e);
    const Vec3<Perturb> r1 = mode_residual(sh, n, w_ref, e);
    for (std::size_t i = 0; i < 3; ++i) mm.m[i][j] = {r0[i].amp, (r1[i].amp - r0[i].amp) / w_ref};
  }
  return mm;
}

ModeMatrix assemble_mode_matrix(const TubeState& base, double n, const TubeGeometry& geom, const HgoMaterial& mat) {
  return assemble_mode_matrix(cylinder_shell(base, geom, mat), n);
}

std::array<cplx, 3> d2_coefficients(const ModeMatrix& mm) {
  const auto& m = mm.m;
  const cplx c11 = m[0][0].constant, d11 = m[0][0].slope;
  const cplx c33 = m[2][2].constant, d33 = m[2][2].slope;
  const cplx c13 = m[0][2].constant, d13 = m[0][2].slope;
  const cplx c31 = m[2][0].constant, d31 = m[2][0].slope;
  return {d11 * d33 - d13 * d31, c11 * d33 + d11 * c33 - c13 * d31 - d13 * c31, c11 * c33 - c13 * c31};
}

double omega_star(double omega_sq, const TubeGeometry& geom, const HgoMaterial& mat) {
  if (omega_sq < 0.0) return std::numeric_limits<double>::quiet_NaN();
  return std::sqrt(omega_sq) * 2.0 * geom.h / std::sqrt(mat.c / mat.rho);
}

namespace {

constexpr double continuation_step = 0.1;

struct QuadRoots {
  std::array<double, 2> w;  // ascending real parts
  double disc;              // real part of the discriminant, scaled
  bool degenerate = false;
};

// scale: characteristic ω², so that a·scale², b·scale and c are comparable.
QuadRoots d2_roots(const ModeMatrix& mm, double scale) {
  const auto [a, b, c] = d2_coefficients(mm);
  QuadRoots q{};
  if (std::abs(a) * scale * scale <= 1e-12 * std::max(std::abs(b) * scale, std::abs(c))) {
    // Degenerate quadratic: one finite root.
    const double w = (-c / b).real();
    q.w = {w, std::numeric_limits<double>::infinity()};
    q.disc = 1.0;
    q.degenerate = true;
    return q;
  }
  const cplx disc = b * b - 4.0 * a * c;
  const cplx s = std::sqrt(disc);
  cplx w1 = (-b - s) / (2.0 * a), w2 = (-b + s) / (2.0 * a);
  if (w1.real() > w2.real()) std::swap(w1, w2);
  q.w = {w1.real(), w2.real()};
  q.disc = (disc / (b * b)).real();
  return q;
}

}  // namespace

CoupledRoots classify(const CylinderShell& sh, int n) {
  CoupledRoots out;
  const double scale = sh.mat.c / (sh.mat.rho * 4.0 * sh.h * sh.h);
  const ModeMatrix m0 = assemble_mode_matrix(sh, 0.0);
  const double w_circ = (-m0.m[0][0].constant / m0.m[0][0].slope).real();
  const double w_rad = (-m0.m[2][2].constant / m0.m[2][2].slope).real();
  const bool circ_lower = w_circ <= w_rad;
  if (n == 0) {
    out.omega_sq = {w_circ, w_rad};
    return out;
  }

  // The sorted order of the two roots persists while they stay real and distinct.
  const int steps = std::max(1, static_cast<int>(std::ceil(n / continuation_step)));
  bool crossed = false;
  QuadRoots q{};
  for (int s = 1; s <= steps; ++s) {
    const double nu = n * static_cast<double>(s) / steps;
    q = d2_roots(assemble_mode_matrix(sh, nu), scale);
    if (!(q.disc > 0.0)) crossed = true;
  }
  const ModeMatrix mn = assemble_mode_matrix(sh, static_cast<double>(n));
  q = d2_roots(mn, scale);
  out.degenerate = q.degenerate;

  if (!crossed) {
    out.omega_sq = circ_lower ? q.w : std::array<double, 2>{q.w[1], q.w[0]};
    return out;
  }

  // Tiebreak on the null vector (U, W) ∝ (-m13, m11): larger |W|/|U| is radial.
  auto ratio = [&](double w) { return std::abs(mn.m[0][0].at(w)) / std::abs(mn.m[0][2].at(w)); };
  const bool first_radial = ratio(q.w[0]) > ratio(q.w[1]);
  out.omega_sq = first_radial ? std::array<double, 2>{q.w[1], q.w[0]} : q.w;
  out.ambiguous = true;
  return out;
}

std::vector<ModeResult> frequencies(const TubeState& base, int n, const TubeGeometry& geom, const HgoMaterial& mat) {
  const CylinderShell sh = cylinder_shell(base, geom, mat);
  const ModeMatrix mm = assemble_mode_matrix(sh, n);
  auto make = [&](Branch b, double w, bool ambiguous, bool degenerate) {
    ModeResult r;
    r.n = n;
    r.branch = b;
    r.omega_sq = w;
    r.is_real = w >= 0.0;
    r.omega_star = omega_star(w, geom, mat);
    r.ambiguous = ambiguous;
    r.degenerate = degenerate;
    return r;
  };
  std::vector<ModeResult> out;
  const ModeEntry& m22 = mm.m[1][1];
  out.push_back(make(Branch::axial, (-m22.constant / m22.slope).real(), false, false));
  const CoupledRoots cr = classify(sh, n);
  out.push_back(make(Branch::circumferential_radial, cr.omega_sq[0], cr.ambiguous, cr.degenerate));
  out.push_back(make(Branch::radial_circumferential, cr.omega_sq[1], cr.ambiguous, cr.degenerate));
  return out;
}

}  // namespace fshell

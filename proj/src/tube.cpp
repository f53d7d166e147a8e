#include "fshell/tube.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "fshell/errors.hpp"
#include "fshell/quadrature.hpp"

namespace fshell {

void TubeGeometry::validate() const {
  if (!(A > 0.0 && h > 0.0 && L > 0.0)) throw std::invalid_argument("geometry: A, h and L must be positive");
  if (!(2.0 * h < A)) throw std::invalid_argument("geometry: wall thickness must be smaller than A");
}

namespace {

struct FibreTerms {
  double C2, S2, I0, e;
};

FibreTerms fibre_terms(double la, double lz, const HgoMaterial& mat) {
  FibreTerms t;
  t.C2 = std::cos(mat.phi) * std::cos(mat.phi);
  t.S2 = std::sin(mat.phi) * std::sin(mat.phi);
  t.I0 = la * la * t.C2 + lz * lz * t.S2;
  t.e = std::exp(mat.k2 * (t.I0 - 1.0) * (t.I0 - 1.0));
  return t;
}

}  // namespace

TubeState closed_recurrence(double lambda_a, double lambda_z, double P, const TubeGeometry& geom,
                            const HgoMaterial& mat) {
  const double A = geom.A, c = mat.c, k1 = mat.k1, k2 = mat.k2, lz = lambda_z;
  TubeState s;
  s.lambda_a = lambda_a;
  s.lambda_z = lz;
  s.P = P;
  const double r0 = lambda_a * A;
  const FibreTerms ft = fibre_terms(lambda_a, lz, mat);
  const double C2 = ft.C2, S2 = ft.S2, I0 = ft.I0, e = ft.e;

  s.r0 = r0;
  s.r1 = A / (lz * r0);
  s.p0 = c * A * A / (lz * lz * r0 * r0) + P;
  const double m = lz * r0 * r0 - A * A;
  s.r2 = m / (lz * lz * r0 * r0 * r0);
  s.p1 = -c * m * m / (lz * lz * lz * A * r0 * r0 * r0 * r0) - 4.0 * k1 * e * (I0 - 1.0) * C2 / (lz * A);
  s.I0 = I0;
  s.I1 = 2.0 * r0 * (s.r1 * A - r0) * C2 / (A * A * A);

  const double r1 = s.r1, r2 = s.r2, p0 = s.p0, p1 = s.p1, I1 = s.I1;
  const double g = 1.0 + 2.0 * k2 * (I0 - 1.0) * (I0 - 1.0);
  s.S0_tt = c * r0 / A - p0 * A / r0 + 4.0 * k1 * (I0 - 1.0) * e * (r0 / A) * C2;
  s.S0_xx = c * lz - p0 / lz + 4.0 * k1 * (I0 - 1.0) * e * lz * S2;
  s.S0_rr = c * r1 - p0 / r1;
  s.S1_tt = c * (r1 * A - r0) / (A * A) - p0 * (r0 - r1 * A) / (r0 * r0) - p1 * A / r0 +
            4.0 * k1 * (g * I1 * r0 / A + (I0 - 1.0) * (r1 * A - r0) / (A * A)) * e * C2;
  s.S1_xx = -p1 / lz + 4.0 * k1 * g * e * I1 * lz * S2;
  s.S1_rr = c * r2 - p1 / r1 + p0 * r2 / (r1 * r1);
  return s;
}

LoadResult asymptotic_loads(double lambda_a, double lambda_z, const TubeGeometry& geom, const HgoMaterial& mat) {
  const double la = lambda_a, lz = lambda_z, hs = geom.hstar(), c = mat.c, k1 = mat.k1, k2 = mat.k2;
  const FibreTerms ft = fibre_terms(la, lz, mat);
  const double C2 = ft.C2, S2 = ft.S2, I0 = ft.I0, e = ft.e;
  const double la2 = la * la, la4 = la2 * la2, la6 = la4 * la2;
  const double lz2 = lz * lz, lz3 = lz2 * lz, lz4 = lz2 * lz2, lz5 = lz4 * lz;
  const double g = 1.0 + 2.0 * k2 * (I0 - 1.0) * (I0 - 1.0);

  LoadResult r;
  r.P = hs * (c / (la4 * lz3) * (la4 * lz2 - 1.0) + 4.0 * k1 * (I0 - 1.0) * e / lz * C2) -
        hs * hs *
            (0.5 * c / (la6 * lz4) * (la6 * lz3 + 3.0 * la2 * lz - 4.0) +
             2.0 * k1 * e / (la2 * lz2) * C2 * (la2 * lz * (I0 - 1.0) + 2.0 * la2 * (la2 * lz - 1.0) * g * C2));
  r.Fstar = hs * (c / (la2 * lz3) * (2.0 * la2 * lz4 - la4 * lz2 - 1.0) +
                  4.0 * k1 * e / lz * (I0 - 1.0) * (2.0 * lz2 * S2 - la2 * C2)) +
            hs * hs *
                (0.5 * c / (la4 * lz4) * (la6 * lz3 + 2.0 * la4 * lz5 - 2.0 * la4 * lz2 - 3.0 * la2 * lz + 2.0) +
                 2.0 * k1 * e / lz2 *
                     ((I0 - 1.0) * ((la2 * lz - 2.0) * C2 + 2.0 * lz3 * S2) +
                      2.0 * (la2 * lz - 1.0) * g * (la2 * C2 * C2 - 2.0 * lz2 * S2 * C2)));
  const double A2 = geom.A * geom.A;
  r.F = M_PI * A2 * r.Fstar;
  r.end_load = r.F + M_PI * la2 * A2 * r.P;
  return r;
}

PsiDerivatives psi_derivatives(double lambda, double lambda_z, const HgoMaterial& mat) {
  const double l = lambda, lz = lambda_z, c = mat.c, k1 = mat.k1, k2 = mat.k2;
  const double C2 = std::cos(mat.phi) * std::cos(mat.phi), S2 = std::sin(mat.phi) * std::sin(mat.phi);
  const double d = l * l * C2 + lz * lz * S2 - 1.0;
  const double e = std::exp(k2 * d * d);
  const double g = 1.0 + 2.0 * k2 * d * d;
  const double l3 = l * l * l, lz2 = lz * lz, lz3 = lz2 * lz;
  PsiDerivatives p;
  p.l = c * (l - 1.0 / (l3 * lz2)) + 4.0 * k1 * d * e * l * C2;
  p.z = c * (lz - 1.0 / (l * l * lz3)) + 4.0 * k1 * d * e * lz * S2;
  p.ll = c * (1.0 + 3.0 / (l3 * l * lz2)) + 4.0 * k1 * C2 * e * (d + 2.0 * l * l * C2 * g);
  p.lz = 2.0 * c / (l3 * lz3) + 8.0 * k1 * l * lz * C2 * S2 * g * e;
  return p;
}

namespace {

constexpr double quadrature_rel_tol = 1e-12;

double lambda_b(double la, double lz, const TubeGeometry& geom) {
  const double ratio = geom.A / geom.B();
  return std::sqrt(((la * la * lz - 1.0) * ratio * ratio + 1.0) / lz);
}

}  // namespace

LoadResult exact_loads(double lambda_a, double lambda_z, const TubeGeometry& geom, const HgoMaterial& mat) {
  const double la = lambda_a, lz = lambda_z;
  if (!(la > 0.0 && lz > 0.0)) throw std::invalid_argument("stretches must be positive");
  const double lb = lambda_b(la, lz, geom);
  const double m = la * la * lz - 1.0;
  LoadResult r;
  if (m == 0.0 || la == lb) return r;

  // ψ_λ vanishes where λ²λ_z = 1, so the pressure integrand stays bounded.
  auto p_integrand = [&](double l) {
    const double q = l * l * lz - 1.0;
    const PsiDerivatives d = psi_derivatives(l, lz, mat);
    if (std::abs(q) < 1e-9) return d.ll / (2.0 * l * lz);
    return d.l / q;
  };
  auto f_integrand = [&](double l) {
    const double q = l * l * lz - 1.0;
    const PsiDerivatives d = psi_derivatives(l, lz, mat);
    return (2.0 * lz * d.z - l * d.l) * l / (q * q);
  };

  const double tol = quadrature_rel_tol * mat.c;
  r.P = integrate(p_integrand, lb, la, tol).value;
  r.Fstar = m * integrate(f_integrand, lb, la, tol / std::max(std::abs(m), 1e-3)).value;
  const double A2 = geom.A * geom.A;
  r.F = M_PI * A2 * r.Fstar;
  r.end_load = r.F + M_PI * la * la * A2 * r.P;
  return r;
}

LoadResult exact_two_term(double lambda_a, double lambda_z, const TubeGeometry& geom, const HgoMaterial& mat) {
  const double la = lambda_a, lz = lambda_z, hs = geom.hstar();
  const PsiDerivatives d = psi_derivatives(la, lz, mat);
  const double m = la * la * lz - 1.0;
  LoadResult r;
  r.P = hs * d.l / (la * lz) - hs * hs * 0.5 / (la * la * la * lz * lz) * (d.l + la * m * d.ll);
  r.Fstar = hs / lz * (2.0 * lz * d.z - la * d.l) +
            hs * hs * 0.5 / (la * lz * lz) * (2.0 * la * lz * lz * d.z - d.l + m * (la * d.ll - 2.0 * lz * d.lz));
  const double A2 = geom.A * geom.A;
  r.F = M_PI * A2 * r.Fstar;
  r.end_load = r.F + M_PI * la * la * A2 * r.P;
  return r;
}

LoadResult loads(LoadModel model, double lambda_a, double lambda_z, const TubeGeometry& geom,
                 const HgoMaterial& mat) {
  return model == LoadModel::exact ? exact_loads(lambda_a, lambda_z, geom, mat)
                                   : asymptotic_loads(lambda_a, lambda_z, geom, mat);
}

double solve_inflation(double P, double lambda_z, const TubeGeometry& geom, const HgoMaterial& mat,
                       LoadModel model) {
  constexpr double lo = 0.5, hi = 3.0, tol = 1e-10;
  constexpr int scan = 100;
  auto f = [&](double la) { return loads(model, la, lambda_z, geom, mat).P - P; };

  // The truncated expansion turns back up for strong compression, so take the
  // first crossing on which P increases with λ_a.
  double a = lo, fa = f(lo);
  for (int i = 1; i <= scan; ++i) {
    const double b = lo + (hi - lo) * i / scan;
    const double fb = f(b);
    if (fb == 0.0) return b;
    if (fa < 0.0 && fb > 0.0) {
      std::uintmax_t max_iter = 200;
      auto stop = [](double x, double y) { return std::abs(y - x) <= tol; };
      const auto [x, y] = boost::math::tools::toms748_solve(f, a, b, fa, fb, stop, max_iter);
      return 0.5 * (x + y);
    }
    a = b;
    fa = fb;
  }
  throw NumericalError("no increasing sign change of P(lambda_a) - P on [0.5, 3] (possible limit-point pressure)");
}

BalanceResult balance_residual(const TubeState& s, double P, const TubeGeometry& geom, const HgoMaterial&) {
  const double A = geom.A, h = geom.h;
  BalanceResult b;
  const double qR = P * s.lambda_z * s.r0 / A;
  b.residual = (s.S0_tt + h * s.S1_tt) / A - qR / (2.0 * h);
  const double a = s.r0;
  b.axial_force = 2.0 * M_PI * A * 2.0 * h * ((1.0 + h / A) * s.S0_xx + h * s.S1_xx) - M_PI * a * a * P;
  return b;
}

}  // namespace fshell

#include "fshell/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fshell {

SurfaceChart SurfaceChart::cylinder(double A) {
  if (!(A > 0.0)) throw std::invalid_argument("cylinder radius must be positive");
  SurfaceChart c;
  c.kind = ChartKind::cylinder;
  c.radius = A;
  c.eval = [A](double th, double x) {
    const double ct = std::cos(th), st = std::sin(th);
    ChartJet j;
    j.r = {A * ct, A * st, x};
    j.d[0] = {-A * st, A * ct, 0.0};
    j.d[1] = {0.0, 0.0, 1.0};
    j.dd[0] = {-A * ct, -A * st, 0.0};
    j.dd[1] = {0.0, 0.0, 0.0};
    j.dd[2] = {0.0, 0.0, 0.0};
    return j;
  };
  return c;
}

SurfaceChart SurfaceChart::user(std::function<ChartJet(double, double)> f) {
  SurfaceChart c;
  c.kind = ChartKind::user;
  c.eval = std::move(f);
  return c;
}

double SurfacePoint::spectral_radius() const {
  const double disc = std::sqrt(std::max(H * H - K, 0.0));
  return std::abs(H) + disc;
}

SurfacePoint chart_frame(const SurfaceChart& chart, double theta1, double theta2) {
  if (!chart.eval) throw std::invalid_argument("chart has no evaluator");
  const ChartJet j = chart.eval(theta1, theta2);

  SurfacePoint p;
  p.r = j.r;
  p.g = j.d;
  const Vec3d c = cross(p.g[0], p.g[1]);
  const double area = norm(c);
  if (!(area >= 1e-14)) throw std::invalid_argument("degenerate parameterization: |g1 x g2| < 1e-14");
  p.n = c / area;

  // Metric and its inverse.
  const double g11 = dot(p.g[0], p.g[0]);
  const double g12 = dot(p.g[0], p.g[1]);
  const double g22 = dot(p.g[1], p.g[1]);
  const double detg = g11 * g22 - g12 * g12;
  p.gu[0] = (g22 * p.g[0] - g12 * p.g[1]) / detg;
  p.gu[1] = (g11 * p.g[1] - g12 * p.g[0]) / detg;

  // Second fundamental form; Weingarten gives n_,α = -b_αβ g^β.
  const double b11 = dot(p.n, j.dd[0]);
  const double b12 = dot(p.n, j.dd[1]);
  const double b22 = dot(p.n, j.dd[2]);
  p.k = b11 * outer(p.gu[0], p.gu[0]) + b12 * (outer(p.gu[0], p.gu[1]) + outer(p.gu[1], p.gu[0])) +
        b22 * outer(p.gu[1], p.gu[1]);
  p.H = 0.5 * trace(p.k);
  p.K = (b11 * b22 - b12 * b12) / detg;
  p.proj = Mat3d::identity() - outer(p.n, p.n);
  return p;
}

namespace {

void check_thickness(const SurfacePoint& point, double Z) {
  if (std::abs(Z) * point.spectral_radius() > thickness_bound)
    throw std::invalid_argument("|Z| exceeds 0.95 of the radius of curvature (Z = " + std::to_string(Z) + ")");
}

}  // namespace

ThicknessMeasures thickness_measures(const SurfacePoint& point, double Z) {
  check_thickness(point, Z);
  ThicknessMeasures t;
  t.mu = 1.0 - 2.0 * point.H * Z + point.K * Z * Z;
  t.lateral_weight = point.proj + Z * (point.k - (2.0 * point.H) * point.proj);
  return t;
}

EdgeFrame edge_frame(const SurfacePoint& point, const Vec3d& tau, double Z) {
  check_thickness(point, Z);
  EdgeFrame e;
  e.tau = tau;
  e.n = point.n;
  e.nu = cross(tau, point.n);
  e.Z = Z;
  e.sqrt_g_tau = norm(tau - Z * (point.k * tau));
  return e;
}

}  // namespace fshell

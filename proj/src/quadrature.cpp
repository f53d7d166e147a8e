#include "fshell/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "fshell/errors.hpp"

namespace fshell {

namespace {

constexpr std::array<double, 8> xgk{0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> wgk{0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights at xgk[1], xgk[3], xgk[5], xgk[7].
constexpr std::array<double, 4> wg{0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                   0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr int max_subdivisions = 2000;
constexpr double roundoff_factor = 50.0;
constexpr int derivative_samples = 16;

struct Panel {
  double kronrod;
  double gauss;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  const double fc = f(c);
  double k = wgk[7] * fc, g = wg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double x = hw * xgk[i];
    const double s = f(c - x) + f(c + x);
    k += wgk[i] * s;
    if (i % 2 == 1) g += wg[i / 2] * s;
  }
  return {k * hw, g * hw};
}

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

Interval make_interval(const std::function<double(double)>& f, double a, double b, QuadratureResult& r) {
  const Panel p = gk15(f, a, b);
  r.evaluations += 15;
  return {a, b, p.kronrod, std::abs(p.kronrod - p.gauss)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
  QuadratureResult r;
  if (a == b) return r;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }

  std::vector<double> cuts{a};
  const double dx = (b - a) / derivative_samples;
  double prev_slope = 0.0;
  for (int i = 0; i < derivative_samples; ++i) {
    const double x0 = a + i * dx, x1 = x0 + dx;
    const double slope = f(x1) - f(x0);
    r.evaluations += 2;
    if (i > 0 && slope * prev_slope < 0.0) cuts.push_back(x0);
    prev_slope = slope;
  }
  cuts.push_back(b);

  // Global adaptivity: bisect the panel with the largest error estimate until
  // the total meets the tolerance or the roundoff floor.
  std::priority_queue<Interval> heap;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) heap.push(make_interval(f, cuts[i], cuts[i + 1], r));
  auto sums = [&] {
    double v = 0.0, e = 0.0, mag = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().error;
      mag += std::abs(copy.top().value);
      copy.pop();
    }
    return std::array<double, 3>{v, e, mag};
  };
  for (int it = 0; it < max_subdivisions; ++it) {
    const auto [v, e, mag] = sums();
    if (e <= abs_tol || e <= roundoff_factor * std::numeric_limits<double>::epsilon() * mag) break;
    const Interval worst = heap.top();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b)) break;
    heap.pop();
    heap.push(make_interval(f, worst.a, m, r));
    heap.push(make_interval(f, m, worst.b, r));
  }
  const auto [v, e, mag] = sums();
  r.value = v;
  r.error = e;
  if (!std::isfinite(r.value)) throw NumericalError("quadrature produced a non-finite value");
  r.value *= sign;
  return r;
}

}  // namespace fshell

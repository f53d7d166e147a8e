#pragma once

#include <cmath>
#include <complex>
#include <ostream>

#include "fshell/scalar.hpp"

namespace fshell {

// base + ε·amp·exp(i(nΘ − ωt)) truncated at first order in ε (ε² = 0).
struct Perturb {
  double base = 0.0;
  std::complex<double> amp{0.0, 0.0};

  constexpr Perturb() = default;
  constexpr Perturb(double b) : base(b) {}  // NOLINT(google-explicit-constructor)
  constexpr Perturb(double b, std::complex<double> a) : base(b), amp(a) {}

  Perturb& operator+=(const Perturb& o) {
    base += o.base;
    amp += o.amp;
    return *this;
  }
  Perturb& operator-=(const Perturb& o) {
    base -= o.base;
    amp -= o.amp;
    return *this;
  }
  Perturb& operator*=(const Perturb& o) {
    amp = amp * o.base + base * o.amp;
    base *= o.base;
    return *this;
  }
  Perturb& operator/=(const Perturb& o) {
    amp = (amp * o.base - base * o.amp) / (o.base * o.base);
    base /= o.base;
    return *this;
  }

  friend Perturb operator+(Perturb a, const Perturb& b) { return a += b; }
  friend Perturb operator-(Perturb a, const Perturb& b) { return a -= b; }
  friend Perturb operator*(Perturb a, const Perturb& b) { return a *= b; }
  friend Perturb operator/(Perturb a, const Perturb& b) { return a /= b; }
  friend Perturb operator-(const Perturb& a) { return {-a.base, -a.amp}; }

  friend bool operator==(const Perturb& a, const Perturb& b) = default;

  friend Perturb exp(const Perturb& a) {
    const double e = std::exp(a.base);
    return {e, e * a.amp};
  }
  friend Perturb log(const Perturb& a) { return {std::log(a.base), a.amp / a.base}; }
  friend Perturb sqrt(const Perturb& a) {
    const double s = std::sqrt(a.base);
    return {s, a.amp / (2.0 * s)};
  }
  friend Perturb atan(const Perturb& a) {
    return {std::atan(a.base), a.amp / (1.0 + a.base * a.base)};
  }
  friend Perturb atan2(const Perturb& y, const Perturb& x) {
    const double r2 = x.base * x.base + y.base * y.base;
    return {std::atan2(y.base, x.base), (x.base * y.amp - y.base * x.amp) / r2};
  }
  friend Perturb cos(const Perturb& a) { return {std::cos(a.base), -std::sin(a.base) * a.amp}; }
  friend Perturb sin(const Perturb& a) { return {std::sin(a.base), std::cos(a.base) * a.amp}; }

  friend std::ostream& operator<<(std::ostream& os, const Perturb& a) {
    return os << '(' << a.base << " + ε" << a.amp << ')';
  }
};

inline double base_value(const Perturb& x) { return x.base; }
inline double magnitude(const Perturb& x) { return std::max(std::abs(x.base), std::abs(x.amp)); }

static_assert(ScalarAlgebra<double>);
static_assert(ScalarAlgebra<Perturb>);

}  // namespace fshell

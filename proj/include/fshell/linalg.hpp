#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "fshell/tensor.hpp"

namespace fshell {

struct SingularSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Gaussian elimination with partial pivoting on the base part.
template <ScalarAlgebra T, std::size_t N>
std::array<T, N> solve_dense(std::array<std::array<T, N>, N> a, std::array<T, N> b) {
  double scale = 0.0;
  for (const auto& row : a)
    for (const auto& x : row) scale = std::max(scale, std::abs(base_value(x)));
  for (std::size_t c = 0; c < N; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < N; ++r)
      if (std::abs(base_value(a[r][c])) > std::abs(base_value(a[piv][c]))) piv = r;
    if (!(std::abs(base_value(a[piv][c])) > 1e-14 * scale)) throw SingularSystem("singular linear system");
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < N; ++r) {
      const T f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < N; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::array<T, N> x;
  for (std::size_t i = N; i-- > 0;) {
    T s = b[i];
    for (std::size_t k = i + 1; k < N; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

template <ScalarAlgebra T>
Vec3<T> solve(const Mat3<T>& a, const Vec3<T>& b) {
  std::array<std::array<T, 3>, 3> m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m[i][j] = a(i, j);
  const auto x = solve_dense<T, 3>(m, {b[0], b[1], b[2]});
  return {x[0], x[1], x[2]};
}

// Eigenvalues of a real symmetric 3x3 matrix, ascending (trigonometric method).
inline std::array<double, 3> symmetric_eigenvalues(const Mat3<double>& a) {
  const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  const double q = trace(a) / 3.0;
  if (p1 == 0.0) {
    std::array<double, 3> e{a(0, 0), a(1, 1), a(2, 2)};
    std::sort(e.begin(), e.end());
    return e;
  }
  const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) + (a(2, 2) - q) * (a(2, 2) - q) +
                    2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  const Mat3<double> b = (1.0 / p) * (a - q * Mat3<double>::identity());
  const double r = std::clamp(det(b) / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
  const double e2 = 3.0 * q - e1 - e3;
  return {e3, e2, e1};
}

}  // namespace fshell

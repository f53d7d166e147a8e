#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fshell/errors.hpp"
#include "fshell/geometry.hpp"
#include "fshell/linalg.hpp"
#include "fshell/material.hpp"

namespace fshell {

// Pointwise data on the bottom surface Z = 0.
template <ScalarAlgebra T>
struct MidsurfaceData {
  SurfacePoint point;
  Fibres fibres;
  Vec3<T> x0;
  Mat3<T> grad_x0;
  Vec3<T> q_minus;          // dead part of the bottom traction
  double pressure = 0.0;    // follower part, q⁻ += P F⁽⁰⁾⁻ᵀ n
  Vec3<T> q_plus;
  std::array<Vec3<T>, 2> qb;   // body force q_b⁽⁰⁾, q_b⁽¹⁾
  std::array<Vec3<T>, 2> acc;  // ẍ⁽⁰⁾, ẍ⁽¹⁾
};

// Surface gradients of lower-order jet entries, supplied by the caller.
template <ScalarAlgebra T>
struct Order1Gradients {
  Mat3<T> grad_x1;
  Vec3<T> div_S0;
};

template <ScalarAlgebra T>
struct Order2Gradients {
  Mat3<T> grad_x2;
  Vec3<T> div_S1;
  Vec3<T> curv_div_S0;  // (k g^α)·S⁽⁰⁾,α
};

// Taylor coefficients in Z: x = Σ Zⁱ/i! x⁽ⁱ⁾, likewise F, S, p.
template <ScalarAlgebra T>
struct ThicknessJet {
  std::array<Vec3<T>, 4> x;
  std::array<T, 3> p{T(0.0), T(0.0), T(0.0)};
  std::array<Mat3<T>, 3> F;
  std::array<Mat3<T>, 3> S;
  std::array<Mat3<T>, 3> G;  // tangential parts of F⁽ⁱ⁾ (G⁽⁰⁾ = ∇x⁽⁰⁾)
  Vec3<T> g;                 // cof(∇x⁽⁰⁾) n
  Mat3<T> B;
  Vec3<T> f2;
  Vec3<T> f3;
  int order = -1;
  int newton_iterations = 0;
  double newton_residual = 0.0;
};

inline constexpr int newton_max_iterations = 50;
inline constexpr double newton_tolerance = 1e-12;

template <ScalarAlgebra T>
Vec3<T> bottom_traction(const MidsurfaceData<T>& d, const Mat3<T>& F0) {
  Vec3<T> q = d.q_minus;
  if (d.pressure != 0.0) q += T(d.pressure) * (transpose(inverse(F0)) * lift<T>(d.point.n));
  return q;
}

// B a = (A¹[a⊗n] + p F⁻¹(a⊗n)F⁻¹)ᵀ n.
template <ScalarAlgebra T>
Mat3<T> b_tensor(const HgoMaterial& mat, const Fibres& fib, const Mat3<T>& F, const T& p, const Vec3<double>& n) {
  const Mat3<T> Fi = inverse(F);
  const Vec3<T> nt = lift<T>(n);
  Mat3<T> B;
  for (std::size_t j = 0; j < 3; ++j) {
    const Mat3<T> an = outer(Vec3<T>::unit(j), nt);
    const Vec3<T> col = transpose(elastic_moduli_apply(mat, fib, F, an) + p * (Fi * an * Fi)) * nt;
    for (std::size_t i = 0; i < 3; ++i) B(i, j) = col[i];
  }
  return B;
}

// Order 0: bottom traction S⁽⁰⁾ᵀn = -q⁻ and g·x⁽¹⁾ = 1, by Newton from (n, c).
template <ScalarAlgebra T>
ThicknessJet<T> solve_order0(const MidsurfaceData<T>& d, const HgoMaterial& mat) {
  ThicknessJet<T> jet;
  const Vec3<T> n = lift<T>(d.point.n);
  jet.x[0] = d.x0;
  jet.G[0] = d.grad_x0;
  jet.g = transpose(adjugate(d.grad_x0)) * n;
  if (!(max_abs(Vec3<double>{base_value(jet.g[0]), base_value(jet.g[1]), base_value(jet.g[2])}) > 1e-14))
    throw std::invalid_argument("surface gradient of x0 must have rank 2");

  Vec3<T> x1 = n;
  T p0(mat.c);
  const double inv_c = 1.0 / mat.c;

  auto residual = [&](const Mat3<T>& F, const Mat3<T>& S) {
    const Vec3<T> r = T(inv_c) * (transpose(S) * n + bottom_traction(d, F));
    return std::array<T, 4>{r[0], r[1], r[2], dot(jet.g, x1) - T(1.0)};
  };
  auto base_norm = [](const std::array<T, 4>& r) {
    double s = 0.0;
    for (const auto& x : r) s = std::max(s, std::abs(base_value(x)));
    return s;
  };

  double rn = 0.0;
  int extra = 0;
  for (int it = 0; it <= newton_max_iterations; ++it) {
    const Mat3<T> F = d.grad_x0 + outer(x1, n);
    const Mat3<T> S = nominal_stress(mat, d.fibres, F, p0);
    const std::array<T, 4> r = residual(F, S);
    rn = base_norm(r);
    jet.newton_iterations = it;
    if (rn <= newton_tolerance) {
      // One more step settles the perturbation part.
      if (extra++ == 1) break;
    }
    if (it == newton_max_iterations) break;

    const Mat3<T> Fi = inverse(F);
    const Vec3<T> m = transpose(Fi) * n;
    Mat3<T> J = b_tensor(mat, d.fibres, F, p0, d.point.n);
    if (d.pressure != 0.0) J -= T(d.pressure) * outer(m, m);
    std::array<std::array<T, 4>, 4> a;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) a[i][j] = T(inv_c) * J(i, j);
      a[i][3] = -T(inv_c) * m[i];
      a[3][i] = jet.g[i];
    }
    a[3][3] = T(0.0);
    std::array<T, 4> b;
    for (std::size_t i = 0; i < 4; ++i) b[i] = -r[i];
    std::array<T, 4> dx;
    try {
      dx = solve_dense<T, 4>(a, b);
    } catch (const SingularSystem&) {
      throw EllipticityLoss("order-0 Jacobian is singular (possible loss of ellipticity)");
    }
    for (std::size_t i = 0; i < 3; ++i) x1[i] += dx[i];
    p0 += dx[3];
  }
  jet.newton_residual = rn;
  if (!(rn <= newton_tolerance))
    throw NewtonFailure("order-0 Newton did not converge, last residual " + std::to_string(rn), rn);

  jet.x[1] = x1;
  jet.p[0] = p0;
  jet.F[0] = d.grad_x0 + outer(x1, n);
  jet.S[0] = nominal_stress(mat, d.fibres, jet.F[0], p0);
  jet.B = b_tensor(mat, d.fibres, jet.F[0], p0, d.point.n);
  jet.order = 0;
  return jet;
}

namespace detail {

template <ScalarAlgebra T>
Vec3<T> solve_b(const Mat3<T>& B, const Vec3<T>& v) {
  try {
    return solve(B, v);
  } catch (const SingularSystem&) {
    throw EllipticityLoss("B tensor is singular (possible loss of ellipticity)");
  }
}

}  // namespace detail

// Order 1: p⁽¹⁾ and x⁽²⁾ from the Z⁰ field equation and the Z¹ constraint.
template <ScalarAlgebra T>
void solve_order1(const MidsurfaceData<T>& d, ThicknessJet<T>& jet, const Order1Gradients<T>& grads,
                  const HgoMaterial& mat) {
  if (jet.order < 0) throw std::logic_error("solve_order1 needs the order-0 jet");
  const Vec3<T> n = lift<T>(d.point.n);
  const Mat3<T> k = lift<T>(d.point.k);
  const Mat3<T>& F0 = jet.F[0];
  const Mat3<T> Fi = inverse(F0);
  const T p0 = jet.p[0];

  jet.G[1] = d.grad_x0 * k + grads.grad_x1;
  const Mat3<T>& G1 = jet.G[1];
  jet.f2 = transpose(elastic_moduli_apply(mat, d.fibres, F0, G1) + p0 * (Fi * G1 * Fi)) * n + grads.div_S0 + d.qb[0];

  const Vec3<T> ra = T(mat.rho) * d.acc[0];
  const Vec3<T> Big = detail::solve_b(jet.B, jet.g);
  const Vec3<T> Bif = detail::solve_b(jet.B, jet.f2 - ra);
  const T p1 = (dot(jet.g, Bif) - trace(Fi * G1)) / dot(jet.g, Big);
  jet.p[1] = p1;
  jet.x[2] = detail::solve_b(jet.B, p1 * jet.g + ra - jet.f2);
  jet.F[1] = G1 + outer(jet.x[2], n);
  jet.S[1] = elastic_moduli_apply(mat, d.fibres, F0, jet.F[1]) - p0 * constraint_r1(F0, jet.F[1]) -
             p1 * constraint_r0(F0);
  jet.order = 1;
}

// Order 2: p⁽²⁾ and x⁽³⁾ from the Z¹ field equation and the Z² constraint.
template <ScalarAlgebra T>
void solve_order2(const MidsurfaceData<T>& d, ThicknessJet<T>& jet, const Order2Gradients<T>& grads,
                  const HgoMaterial& mat) {
  if (jet.order < 1) throw std::logic_error("solve_order2 needs the order-1 jet");
  const Vec3<T> n = lift<T>(d.point.n);
  const Mat3<T> k = lift<T>(d.point.k);
  const Mat3<T>& F0 = jet.F[0];
  const Mat3<T>& F1 = jet.F[1];
  const T p0 = jet.p[0], p1 = jet.p[1];
  const Mat3<T> R0 = constraint_r0(F0);
  const Mat3<T> R1F1 = constraint_r1(F0, F1);

  jet.G[2] = T(2.0) * (jet.G[1] * k) + grads.grad_x2;
  const Mat3<T>& G2 = jet.G[2];
  const T c3 = -contract(R0, G2) - contract(R1F1, F1);
  const Mat3<T> second = elastic_moduli2_apply(mat, d.fibres, F0, F1, F1) - p0 * constraint_r2(F0, F1, F1) -
                         T(2.0) * p1 * R1F1;
  const Mat3<T> abar_g2 = elastic_moduli_apply(mat, d.fibres, F0, G2) - p0 * constraint_r1(F0, G2);
  jet.f3 = grads.div_S1 + transpose(abar_g2 + second) * n - (p0 * c3) * jet.g + grads.curv_div_S0 + d.qb[1];

  const Vec3<T> ra = T(mat.rho) * d.acc[1];
  const Vec3<T> Big = detail::solve_b(jet.B, jet.g);
  const Vec3<T> Bir = detail::solve_b(jet.B, ra - jet.f3);
  const T p2 = (c3 - dot(jet.g, Bir)) / dot(jet.g, Big);
  jet.p[2] = p2;
  jet.x[3] = detail::solve_b(jet.B, ra - jet.f3 + p2 * jet.g);
  jet.F[2] = G2 + outer(jet.x[3], n);
  jet.S[2] = elastic_moduli_apply(mat, d.fibres, F0, jet.F[2]) - p0 * constraint_r1(F0, jet.F[2]) + second -
             p2 * R0;
  jet.order = 2;
}

// Recomputes S⁽⁰⁻²⁾ from F⁽⁰⁻²⁾ and p⁽⁰⁻²⁾ (entries beyond jet.order stay zero).
template <ScalarAlgebra T>
std::array<Mat3<T>, 3> stress_jet(const ThicknessJet<T>& jet, const HgoMaterial& mat, const Fibres& fib) {
  std::array<Mat3<T>, 3> S;
  if (jet.order < 0) return S;
  const Mat3<T>& F0 = jet.F[0];
  const T p0 = jet.p[0];
  S[0] = nominal_stress(mat, fib, F0, p0);
  if (jet.order < 1) return S;
  const Mat3<T>& F1 = jet.F[1];
  const Mat3<T> R0 = constraint_r0(F0);
  const Mat3<T> R1F1 = constraint_r1(F0, F1);
  S[1] = elastic_moduli_apply(mat, fib, F0, F1) - p0 * R1F1 - jet.p[1] * R0;
  if (jet.order < 2) return S;
  const Mat3<T>& F2 = jet.F[2];
  S[2] = elastic_moduli_apply(mat, fib, F0, F2) - p0 * constraint_r1(F0, F2) +
         elastic_moduli2_apply(mat, fib, F0, F1, F1) - p0 * constraint_r2(F0, F1, F1) -
         T(2.0) * jet.p[1] * R1F1 - jet.p[2] * R0;
  return S;
}

// Coefficients of det F(Z) - 1 at Z⁰, Z¹, Z²/2.
template <ScalarAlgebra T>
std::array<T, 3> incompressibility_residuals(const ThicknessJet<T>& jet) {
  const Mat3<T> R0 = constraint_r0(jet.F[0]);
  std::array<T, 3> r{det(jet.F[0]) - T(1.0), T(0.0), T(0.0)};
  if (jet.order >= 1) r[1] = contract(R0, jet.F[1]);
  if (jet.order >= 2) r[2] = contract(R0, jet.F[2]) + contract(constraint_r1(jet.F[0], jet.F[1]), jet.F[1]);
  return r;
}

// Z⁰ coefficient of the field equation: ∇·S⁽⁰⁾ + S⁽¹⁾ᵀn + q_b⁽⁰⁾ - ρẍ⁽⁰⁾.
template <ScalarAlgebra T>
Vec3<T> field_residual_z0(const MidsurfaceData<T>& d, const ThicknessJet<T>& jet, const Vec3<T>& div_S0,
                          const HgoMaterial& mat) {
  return div_S0 + transpose(jet.S[1]) * lift<T>(d.point.n) + d.qb[0] - T(mat.rho) * d.acc[0];
}

// Z¹ coefficient: ∇·S⁽¹⁾ + S⁽²⁾ᵀn + (k g^α)·S⁽⁰⁾,α + q_b⁽¹⁾ - ρẍ⁽¹⁾.
template <ScalarAlgebra T>
Vec3<T> field_residual_z1(const MidsurfaceData<T>& d, const ThicknessJet<T>& jet, const Order2Gradients<T>& grads,
                          const HgoMaterial& mat) {
  return grads.div_S1 + transpose(jet.S[2]) * lift<T>(d.point.n) + grads.curv_div_S0 + d.qb[1] -
         T(mat.rho) * d.acc[1];
}

template <ScalarAlgebra T>
struct EdgeResultants {
  T twist;
  T bending;
  T rotation;
};

// Leading-order twist and bending moments per unit edge length, and the edge
// rotation angle of the middle surface Z = h, taken in (-π/2, π/2].
template <ScalarAlgebra T>
EdgeResultants<T> edge_resultants(const ThicknessJet<T>& jet, const EdgeFrame& frame, double h) {
  using std::atan2;
  if (jet.order < 1) throw std::logic_error("edge_resultants needs the order-1 jet");
  const Vec3<T> nu = lift<T>(frame.nu), tau = lift<T>(frame.tau), n = lift<T>(frame.n);
  const double h3 = h * h * h;
  const Vec3<T> s1 = transpose(jet.S[1]) * nu;
  const Vec3<T> s0 = transpose(jet.S[0]) * nu;
  EdgeResultants<T> r;
  r.twist = T(2.0 / 3.0 * h3) * dot(s1, cross(nu, jet.x[1])) + T(h3 / 3.0) * dot(s0, cross(nu, jet.x[2]));
  r.bending = T(2.0 / 3.0 * h3) * dot(s1, cross(tau, jet.x[1])) + T(h3 / 3.0) * dot(s0, cross(tau, jet.x[2]));

  Mat3<T> Fm = jet.F[0] + T(h) * jet.F[1];
  if (jet.order >= 2) Fm += T(0.5 * h * h) * jet.F[2];
  const Vec3<T> t = Fm * nu;
  T a = atan2(dot(t, n), dot(t, nu));
  if (base_value(a) > M_PI / 2) a -= T(M_PI);
  if (base_value(a) <= -M_PI / 2) a += T(M_PI);
  r.rotation = a;
  return r;
}

}  // namespace fshell

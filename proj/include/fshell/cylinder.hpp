#pragma once

#include <complex>

#include "fshell/expansion.hpp"
#include "fshell/perturb.hpp"

namespace fshell {

// Shell problem on the cylinder chart with inner radius A and half-thickness
// h, loaded by a follower pressure P on the inner surface. Plane strain: all
// fields are X-independent except x⁽⁰⁾, whose X-derivative is λ_z e_X.
struct CylinderShell {
  double A;
  double h;
  double lambda_z;
  double P;
  HgoMaterial mat;
  double r0;  // base radius of the bottom surface
};

// Components of the Θ-derivative of a field given in the local Cartesian
// frame at Θ = 0 (e_R, e_Θ, e_X) = (e1, e2, e3). Base parts are
// Θ-independent; amplitudes carry exp(inΘ).
struct ThetaDerivation {
  double n = 0.0;

  double operator()(double) const { return 0.0; }
  Perturb operator()(const Perturb& a) const { return {0.0, std::complex<double>(0.0, n) * a.amp}; }

  // dv/dΘ = v' + Ω v with Ω e_R = e_Θ, Ω e_Θ = -e_R.
  template <ScalarAlgebra T>
  Vec3<T> operator()(const Vec3<T>& v) const {
    return {(*this)(v[0]) - v[1], (*this)(v[1]) + v[0], (*this)(v[2])};
  }

  // dT/dΘ = T' + ΩT - TΩ.
  template <ScalarAlgebra T>
  Mat3<T> operator()(const Mat3<T>& t) const {
    Mat3<T> r;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) r(i, j) = (*this)(t(i, j));
    for (std::size_t j = 0; j < 3; ++j) {
      r(0, j) -= t(1, j);
      r(1, j) += t(0, j);
    }
    for (std::size_t i = 0; i < 3; ++i) {
      r(i, 0) -= t(i, 1);
      r(i, 1) += t(i, 0);
    }
    return r;
  }
};

// Second time derivative of a field proportional to exp(-iωt) about a
// static base.
struct TimeDerivation {
  double omega_sq = 0.0;

  double operator()(double) const { return 0.0; }
  Perturb operator()(const Perturb& a) const { return {0.0, -omega_sq * a.amp}; }
  template <ScalarAlgebra T>
  Vec3<T> operator()(const Vec3<T>& v) const {
    return {(*this)(v[0]), (*this)(v[1]), (*this)(v[2])};
  }
};

// ∇ of a vector field from its partials along Θ and X.
template <ScalarAlgebra T>
Mat3<T> surface_gradient(const SurfacePoint& pt, const Vec3<T>& d_theta, const Vec3<T>& d_x) {
  return outer(d_theta, lift<T>(pt.gu[0])) + outer(d_x, lift<T>(pt.gu[1]));
}

// ∇·S = g^α·S_,α (first index) for X-independent fields.
template <ScalarAlgebra T>
Vec3<T> surface_divergence(const SurfacePoint& pt, const Mat3<T>& d_theta) {
  return transpose(d_theta) * lift<T>(pt.gu[0]);
}

template <ScalarAlgebra T>
T surface_divergence(const SurfacePoint& pt, const Vec3<T>& d_theta) {
  return dot(lift<T>(pt.gu[0]), d_theta);
}

template <ScalarAlgebra T>
MidsurfaceData<T> cylinder_data(const CylinderShell& sh, const SurfacePoint& pt, const Vec3<T>& x0,
                                const Vec3<T>& dtheta_x0, const Vec3<T>& acc_x0) {
  MidsurfaceData<T> d;
  d.point = pt;
  d.fibres = Fibres::from_frame(sh.mat, pt.g[0] / norm(pt.g[0]), pt.g[1] / norm(pt.g[1]));
  d.x0 = x0;
  d.grad_x0 = surface_gradient(pt, dtheta_x0, lift<T>(sh.lambda_z * pt.g[1] / norm(pt.g[1])));
  d.pressure = sh.P;
  d.acc[0] = acc_x0;
  return d;
}

// Data of the axisymmetric base x⁽⁰⁾ = r0 e_R + λ_z X e_X at Θ = 0.
inline MidsurfaceData<double> cylinder_base_data(const CylinderShell& sh) {
  const SurfacePoint pt = chart_frame(SurfaceChart::cylinder(sh.A), 0.0, 0.0);
  const Vec3d x0{sh.r0, 0.0, 0.0};
  return cylinder_data(sh, pt, x0, ThetaDerivation{}(x0), Vec3d{});
}

// Jet up to the given order, with the surface gradients of lower-order
// entries taken through the Θ-derivation D.
template <ScalarAlgebra T>
ThicknessJet<T> cylinder_jet(const MidsurfaceData<T>& d, const ThetaDerivation& D, const HgoMaterial& mat,
                             int order) {
  const SurfacePoint& pt = d.point;
  ThicknessJet<T> jet = solve_order0(d, mat);
  if (order < 1) return jet;
  const Mat3<T> dS0 = D(jet.S[0]);
  solve_order1(d, jet, Order1Gradients<T>{surface_gradient(pt, D(jet.x[1]), Vec3<T>{}), surface_divergence(pt, dS0)},
               mat);
  if (order < 2) return jet;
  const Order2Gradients<T> g2{surface_gradient(pt, D(jet.x[2]), Vec3<T>{}), surface_divergence(pt, D(jet.S[1])),
                              transpose(dS0) * lift<T>(pt.k * pt.gu[0])};
  solve_order2(d, jet, g2, mat);
  return jet;
}

// Fields whose Θ-derivatives enter the refined shell equations, with the
// pointwise terms of the balance.
template <ScalarAlgebra T>
struct ShellFields {
  Mat3<T> S_bar;   // (1 + h(k-2H1)) S⁽⁰⁾ + h(1 + 4/3 h(k-2H1)) S⁽¹⁾
  Vec3<T> flux;    // S̄⋆n - S̄⋆ᵀn - [h²/3 (ρ1ẍ⁽¹⁾ - 1q_b⁽¹⁾) - m_t + h k q⁻_t]
  Mat3<T> S1_t;    // 1 S⁽¹⁾ 1
  T tr_kS;         // tr(k S̄)
  Vec3<T> local;   // q̄ - ρ ẍ̄
};

template <ScalarAlgebra T, class Accel>
ShellFields<T> shell_fields(const CylinderShell& sh, const MidsurfaceData<T>& d, const ThicknessJet<T>& jet,
                            const Accel& accel) {
  const SurfacePoint& pt = d.point;
  const double h = sh.h;
  const Mat3<T> one = lift<T>(pt.proj);
  const Mat3<T> kk = lift<T>(pt.k);
  const Vec3<T> n = lift<T>(pt.n);
  const Mat3<T> km = lift<T>(pt.k - (2.0 * pt.H) * pt.proj);
  const Mat3<T> L = one + T(h) * km;

  ShellFields<T> f;
  f.S_bar = L * jet.S[0] + T(h) * ((one + T(4.0 / 3.0 * h) * km) * jet.S[1]);
  const Vec3<T> star = (L * jet.S[0] + T(h) * (one * jet.S[1])) * n;
  const Vec3<T> star_t = (L * transpose(jet.S[0]) + T(h) * (one * transpose(jet.S[1]))) * n;

  const Vec3<T> qm = bottom_traction(d, jet.F[0]);
  const double mu2h = 1.0 - 4.0 * pt.H * h + 4.0 * pt.K * h * h;
  const Vec3<T> m = T(0.5) * (T(mu2h) * d.q_plus - qm);
  const Vec3<T> qbar = T(1.0 / (2.0 * h)) * (T(mu2h) * d.q_plus + qm);
  const Vec3<T> acc1 = accel(jet.x[1]);
  const Vec3<T> rot = T(h * h / 3.0) * (one * (T(sh.mat.rho) * acc1 - d.qb[1]));
  f.flux = star - star_t - (rot - one * m + T(h) * (kk * (one * qm)));

  f.S1_t = one * jet.S[1] * one;
  f.tr_kS = contract(kk, f.S_bar);

  const Vec3<T> acc_bar = T(1.0 - 2.0 * h * pt.H + 4.0 / 3.0 * h * h * pt.K) * d.acc[0] +
                          T(h * (1.0 - 8.0 / 3.0 * h * pt.H)) * acc1;
  f.local = qbar - T(sh.mat.rho) * acc_bar;
  return f;
}

// In-plane residual 1(∇·S̄ + q̄ - ρẍ̄) and normal residual, assembled into one
// vector (tangential part plus n-component along n).
template <ScalarAlgebra T>
Vec3<T> shell_residual(const CylinderShell& sh, const SurfacePoint& pt, const ShellFields<T>& f,
                       const Mat3<T>& d_S_bar, const Vec3<T>& d_flux, const Vec3<T>& d_bend) {
  const Mat3<T> one = lift<T>(pt.proj);
  const Vec3<T> n = lift<T>(pt.n);
  const Vec3<T> tangential = one * (surface_divergence(pt, d_S_bar) + f.local);
  const T normal = surface_divergence(pt, d_flux) + f.tr_kS + T(sh.h * sh.h / 3.0) * surface_divergence(pt, d_bend) +
                   dot(n, f.local);
  return tangential + normal * n;
}

// Bending vector 1∇·S⁽¹⁾_t from the Θ-derivative of S⁽¹⁾_t.
template <ScalarAlgebra T>
Vec3<T> bending_vector(const SurfacePoint& pt, const Mat3<T>& d_S1_t) {
  return lift<T>(pt.proj) * surface_divergence(pt, d_S1_t);
}

}  // namespace fshell

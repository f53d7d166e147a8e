#pragma once

#include <cmath>
#include <stdexcept>

#include "fshell/tensor.hpp"

namespace fshell {

// Holzapfel–Gasser–Ogden energy with two symmetric fibre families,
//   W = c/2 (I1 - 3) + k1/(2 k2) Σ_{i=4,6} (exp(k2 (Ii - 1)²) - 1).
// All values in SI.
struct HgoMaterial {
  double c = 3.0e3;       // Pa
  double k1 = 2.3632e3;   // Pa
  double k2 = 0.8393;
  double phi = 29.0 * M_PI / 180.0;
  double rho = 1190.0;    // kg/m³

  void validate() const {
    if (!(c > 0.0)) throw std::invalid_argument("material: c must be positive");
    if (!(k1 >= 0.0)) throw std::invalid_argument("material: k1 must be non-negative");
    if (!(k2 > 0.0)) throw std::invalid_argument("material: k2 must be positive");
    if (!(phi >= 0.0 && phi <= M_PI / 2)) throw std::invalid_argument("material: phi must lie in [0, pi/2]");
    if (!(rho > 0.0)) throw std::invalid_argument("material: rho must be positive");
  }
};

// Unit fibre directions M = cosφ e_Θ + sinφ e_X, M' = -cosφ e_Θ + sinφ e_X
// in the reference frame of the point.
struct Fibres {
  Vec3<double> M;
  Vec3<double> Mp;

  static Fibres from_frame(const HgoMaterial& mat, const Vec3<double>& e_theta, const Vec3<double>& e_x) {
    const double cp = std::cos(mat.phi), sp = std::sin(mat.phi);
    return {cp * e_theta + sp * e_x, -cp * e_theta + sp * e_x};
  }
};

namespace detail {

template <ScalarAlgebra T>
T fibre_f(const HgoMaterial& mat, const T& I) {
  using std::exp;
  const T d = I - T(1.0);
  return T(2.0 * mat.k1) * d * exp(T(mat.k2) * d * d);
}

template <ScalarAlgebra T>
T fibre_df(const HgoMaterial& mat, const T& I) {
  using std::exp;
  const T d = I - T(1.0);
  return T(2.0 * mat.k1) * exp(T(mat.k2) * d * d) * (T(1.0) + T(2.0 * mat.k2) * d * d);
}

template <ScalarAlgebra T>
void require_invertible(const Mat3<T>& F) {
  if (!(std::abs(base_value(det(F))) > 1e-14)) throw std::invalid_argument("deformation gradient is singular");
}

}  // namespace detail

template <ScalarAlgebra T>
T strain_energy(const HgoMaterial& mat, const Fibres& fib, const Mat3<T>& F) {
  using std::exp;
  const Vec3<T> FM = F * lift<T>(fib.M);
  const Vec3<T> FMp = F * lift<T>(fib.Mp);
  const T I1 = contract(transpose(F), F);
  const T I4 = dot(FM, FM);
  const T I6 = dot(FMp, FMp);
  const T d4 = I4 - T(1.0), d6 = I6 - T(1.0);
  return T(0.5 * mat.c) * (I1 - T(3.0)) +
         T(mat.k1 / (2.0 * mat.k2)) * (exp(T(mat.k2) * d4 * d4) - T(1.0) + exp(T(mat.k2) * d6 * d6) - T(1.0));
}

// ∂W/∂F with the convention (∂W/∂F)_ij = ∂W/∂F_ji.
template <ScalarAlgebra T>
Mat3<T> elastic_stress(const HgoMaterial& mat, const Fibres& fib, const Mat3<T>& F) {
  const Vec3<T> M = lift<T>(fib.M), Mp = lift<T>(fib.Mp);
  const Vec3<T> FM = F * M, FMp = F * Mp;
  return T(mat.c) * transpose(F) + detail::fibre_f(mat, dot(FM, FM)) * outer(M, FM) +
         detail::fibre_f(mat, dot(FMp, FMp)) * outer(Mp, FMp);
}

// S = ∂W/∂F - p F⁻¹.
template <ScalarAlgebra T>
Mat3<T> nominal_stress(const HgoMaterial& mat, const Fibres& fib, const Mat3<T>& F, const T& p) {
  detail::require_invertible(F);
  return elastic_stress(mat, fib, F) - p * inverse(F);
}

// A¹[G], the derivative of ∂W/∂F in direction G.
template <ScalarAlgebra T>
Mat3<T> elastic_moduli_apply(const HgoMaterial& mat, const Fibres& fib, const Mat3<T>& F, const Mat3<T>& G) {
  Mat3<T> r = T(mat.c) * transpose(G);
  for (const Vec3<double>& m : {fib.M, fib.Mp}) {
    const Vec3<T> M = lift<T>(m);
    const Vec3<T> FM = F * M, GM = G * M;
    const T I = dot(FM, FM);
    r += (detail::fibre_df(mat, I) * (T(2.0) * dot(FM, GM))) * outer(M, FM);
    r += detail::fibre_f(mat, I) * outer(M, GM);
  }
  return r;
}

// R⁰ = det(F) F⁻¹, the derivative of det F.
template <ScalarAlgebra T>
Mat3<T> constraint_r0(const Mat3<T>& F) {
  return adjugate(F);
}

// R¹[G] = det F (tr(F⁻¹G) F⁻¹ - F⁻¹ G F⁻¹).
template <ScalarAlgebra T>
Mat3<T> constraint_r1(const Mat3<T>& F, const Mat3<T>& G) {
  const Mat3<T> Fi = inverse(F);
  const Mat3<T> FiG = Fi * G;
  return det(F) * (trace(FiG) * Fi - FiG * Fi);
}

// R²[G, H], the second derivative of det(F) F⁻¹.
template <ScalarAlgebra T>
Mat3<T> constraint_r2(const Mat3<T>& F, const Mat3<T>& G, const Mat3<T>& H) {
  const Mat3<T> Fi = inverse(F);
  const Mat3<T> FiG = Fi * G, FiH = Fi * H;
  const T tG = trace(FiG), tH = trace(FiH);
  const Mat3<T> r = tH * (tG * Fi - FiG * Fi) - trace(FiH * FiG) * Fi - tG * (FiH * Fi) + FiH * FiG * Fi +
                    FiG * FiH * Fi;
  return det(F) * r;
}

// A²[G, H] by central differences of A¹[G] along H.
inline constexpr double a2_relative_step = 1e-5;

template <ScalarAlgebra T>
Mat3<T> elastic_moduli2_apply(const HgoMaterial& mat, const Fibres& fib, const Mat3<T>& F, const Mat3<T>& G,
                              const Mat3<T>& H) {
  const double hn = max_abs(H);
  if (hn == 0.0) return Mat3<T>{};
  const double t = a2_relative_step * std::max(1.0, max_abs(F)) / hn;
  const Mat3<T> plus = elastic_moduli_apply(mat, fib, F + T(t) * H, G);
  const Mat3<T> minus = elastic_moduli_apply(mat, fib, F - T(t) * H, G);
  return T(1.0 / (2.0 * t)) * (plus - minus);
}

// Elastic moduli bundle at (F, p).
template <ScalarAlgebra T>
struct Moduli {
  const HgoMaterial* mat;
  Fibres fib;
  Mat3<T> F;
  T p;

  Tensor4<T> a1() const {
    return Tensor4<T>::from_map([&](const Mat3<T>& G) { return elastic_moduli_apply(*mat, fib, F, G); });
  }
  Mat3<T> r0() const { return constraint_r0(F); }
  Tensor4<T> r1() const {
    return Tensor4<T>::from_map([&](const Mat3<T>& G) { return constraint_r1(F, G); });
  }
  Mat3<T> a2(const Mat3<T>& G, const Mat3<T>& H) const { return elastic_moduli2_apply(*mat, fib, F, G, H); }
};

template <ScalarAlgebra T>
Moduli<T> moduli(const HgoMaterial& mat, const Fibres& fib, const Mat3<T>& F, const T& p) {
  detail::require_invertible(F);
  return {&mat, fib, F, p};
}

}  // namespace fshell

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <type_traits>

#include "fshell/scalar.hpp"

namespace fshell {

// Small dense 3-vectors and 3x3 tensors over any ScalarAlgebra. Tensors are
// stored row-major; (a ⊗ b)_{ij} = a_i b_j.

template <ScalarAlgebra T>
struct Vec3 {
  std::array<T, 3> v{T(0.0), T(0.0), T(0.0)};

  constexpr Vec3() = default;
  constexpr Vec3(T x, T y, T z) : v{x, y, z} {}

  template <ScalarAlgebra U>
    requires(!std::is_same_v<U, T> && std::is_convertible_v<U, T>)
  constexpr explicit Vec3(const Vec3<U>& o) : v{T(o[0]), T(o[1]), T(o[2])} {}

  constexpr T& operator[](std::size_t i) { return v[i]; }
  constexpr const T& operator[](std::size_t i) const { return v[i]; }

  static constexpr Vec3 unit(std::size_t i) {
    Vec3 e;
    e[i] = T(1.0);
    return e;
  }

  Vec3& operator+=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) v[i] += o.v[i];
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) v[i] -= o.v[i];
    return *this;
  }
  Vec3& operator*=(const T& s) {
    for (auto& x : v) x *= s;
    return *this;
  }
};

template <ScalarAlgebra T>
struct Mat3 {
  std::array<T, 9> m{};

  constexpr Mat3() {
    for (auto& x : m) x = T(0.0);
  }

  template <ScalarAlgebra U>
    requires(!std::is_same_v<U, T> && std::is_convertible_v<U, T>)
  constexpr explicit Mat3(const Mat3<U>& o) {
    for (std::size_t i = 0; i < 9; ++i) m[i] = T(o.m[i]);
  }

  constexpr T& operator()(std::size_t i, std::size_t j) { return m[3 * i + j]; }
  constexpr const T& operator()(std::size_t i, std::size_t j) const { return m[3 * i + j]; }

  static constexpr Mat3 identity() {
    Mat3 a;
    a(0, 0) = a(1, 1) = a(2, 2) = T(1.0);
    return a;
  }

  static constexpr Mat3 diag(T a, T b, T c) {
    Mat3 d;
    d(0, 0) = a;
    d(1, 1) = b;
    d(2, 2) = c;
    return d;
  }

  Vec3<T> row(std::size_t i) const { return {m[3 * i], m[3 * i + 1], m[3 * i + 2]}; }
  Vec3<T> col(std::size_t j) const { return {m[j], m[3 + j], m[6 + j]}; }

  Mat3& operator+=(const Mat3& o) {
    for (std::size_t i = 0; i < 9; ++i) m[i] += o.m[i];
    return *this;
  }
  Mat3& operator-=(const Mat3& o) {
    for (std::size_t i = 0; i < 9; ++i) m[i] -= o.m[i];
    return *this;
  }
  Mat3& operator*=(const T& s) {
    for (auto& x : m) x *= s;
    return *this;
  }
};

// --- vector algebra --------------------------------------------------------

template <ScalarAlgebra T>
Vec3<T> operator+(Vec3<T> a, const Vec3<T>& b) { return a += b; }
template <ScalarAlgebra T>
Vec3<T> operator-(Vec3<T> a, const Vec3<T>& b) { return a -= b; }
template <ScalarAlgebra T>
Vec3<T> operator-(const Vec3<T>& a) { return {-a[0], -a[1], -a[2]}; }
template <ScalarAlgebra T>
Vec3<T> operator*(Vec3<T> a, const T& s) { return a *= s; }
template <ScalarAlgebra T>
Vec3<T> operator*(const T& s, Vec3<T> a) { return a *= s; }
template <ScalarAlgebra T>
Vec3<T> operator*(Vec3<T> a, double s) requires(!std::is_same_v<T, double>) { return a *= T(s); }
template <ScalarAlgebra T>
Vec3<T> operator*(double s, Vec3<T> a) requires(!std::is_same_v<T, double>) { return a *= T(s); }
template <ScalarAlgebra T>
Vec3<T> operator/(Vec3<T> a, const T& s) {
  for (std::size_t i = 0; i < 3; ++i) a[i] = a[i] / s;
  return a;
}

template <ScalarAlgebra T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <ScalarAlgebra T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <ScalarAlgebra T>
T norm(const Vec3<T>& a) {
  using std::sqrt;
  return sqrt(dot(a, a));
}

// Mixed-type helpers: real geometry against perturbed fields.
template <ScalarAlgebra T>
Vec3<T> lift(const Vec3<double>& a) {
  return {T(a[0]), T(a[1]), T(a[2])};
}
template <ScalarAlgebra T>
Mat3<T> lift(const Mat3<double>& a) {
  Mat3<T> r;
  for (std::size_t i = 0; i < 9; ++i) r.m[i] = T(a.m[i]);
  return r;
}

// --- tensor algebra --------------------------------------------------------

template <ScalarAlgebra T>
Mat3<T> operator+(Mat3<T> a, const Mat3<T>& b) { return a += b; }
template <ScalarAlgebra T>
Mat3<T> operator-(Mat3<T> a, const Mat3<T>& b) { return a -= b; }
template <ScalarAlgebra T>
Mat3<T> operator-(Mat3<T> a) {
  for (auto& x : a.m) x = -x;
  return a;
}
template <ScalarAlgebra T>
Mat3<T> operator*(Mat3<T> a, const T& s) { return a *= s; }
template <ScalarAlgebra T>
Mat3<T> operator*(const T& s, Mat3<T> a) { return a *= s; }
template <ScalarAlgebra T>
Mat3<T> operator*(Mat3<T> a, double s) requires(!std::is_same_v<T, double>) { return a *= T(s); }
template <ScalarAlgebra T>
Mat3<T> operator*(double s, Mat3<T> a) requires(!std::is_same_v<T, double>) { return a *= T(s); }

template <ScalarAlgebra T>
Mat3<T> operator*(const Mat3<T>& a, const Mat3<T>& b) {
  Mat3<T> c;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  return c;
}

template <ScalarAlgebra T>
Vec3<T> operator*(const Mat3<T>& a, const Vec3<T>& x) {
  return {a(0, 0) * x[0] + a(0, 1) * x[1] + a(0, 2) * x[2],
          a(1, 0) * x[0] + a(1, 1) * x[1] + a(1, 2) * x[2],
          a(2, 0) * x[0] + a(2, 1) * x[1] + a(2, 2) * x[2]};
}

// x·A, i.e. Aᵀx.
template <ScalarAlgebra T>
Vec3<T> operator*(const Vec3<T>& x, const Mat3<T>& a) {
  return {x[0] * a(0, 0) + x[1] * a(1, 0) + x[2] * a(2, 0),
          x[0] * a(0, 1) + x[1] * a(1, 1) + x[2] * a(2, 1),
          x[0] * a(0, 2) + x[1] * a(1, 2) + x[2] * a(2, 2)};
}

template <ScalarAlgebra T>
Mat3<T> outer(const Vec3<T>& a, const Vec3<T>& b) {
  Mat3<T> c;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) c(i, j) = a[i] * b[j];
  return c;
}

template <ScalarAlgebra T>
Mat3<T> transpose(const Mat3<T>& a) {
  Mat3<T> t;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t(i, j) = a(j, i);
  return t;
}

template <ScalarAlgebra T>
T trace(const Mat3<T>& a) {
  return a(0, 0) + a(1, 1) + a(2, 2);
}

// A[B] = tr(AB).
template <ScalarAlgebra T>
T contract(const Mat3<T>& a, const Mat3<T>& b) {
  T s(0.0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) s += a(i, j) * b(j, i);
  return s;
}

// A[a, b] = Aa·b.
template <ScalarAlgebra T>
T bilinear(const Mat3<T>& a, const Vec3<T>& x, const Vec3<T>& y) {
  return dot(a * x, y);
}

template <ScalarAlgebra T>
T det(const Mat3<T>& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

// adj(A) = det(A) A⁻¹, defined for singular A as well.
template <ScalarAlgebra T>
Mat3<T> adjugate(const Mat3<T>& a) {
  Mat3<T> c;
  c(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  c(0, 1) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
  c(0, 2) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
  c(1, 0) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
  c(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
  c(1, 2) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
  c(2, 0) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
  c(2, 1) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
  c(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  return c;
}

template <ScalarAlgebra T>
Mat3<T> inverse(const Mat3<T>& a) {
  const T d = det(a);
  Mat3<T> c = adjugate(a);
  for (auto& x : c.m) x = x / d;
  return c;
}

template <ScalarAlgebra T>
double max_abs(const Mat3<T>& a) {
  double r = 0.0;
  for (const auto& x : a.m) r = std::max(r, magnitude(x));
  return r;
}

template <ScalarAlgebra T>
double max_abs(const Vec3<T>& a) {
  double r = 0.0;
  for (const auto& x : a.v) r = std::max(r, magnitude(x));
  return r;
}

// Fourth-order tensor with the contraction A[G] = A_{ijlk} G_{kl} e_i ⊗ e_j.
template <ScalarAlgebra T>
struct Tensor4 {
  std::array<T, 81> a{};

  Tensor4() {
    for (auto& x : a) x = T(0.0);
  }

  T& operator()(std::size_t i, std::size_t j, std::size_t l, std::size_t k) {
    return a[27 * i + 9 * j + 3 * l + k];
  }
  const T& operator()(std::size_t i, std::size_t j, std::size_t l, std::size_t k) const {
    return a[27 * i + 9 * j + 3 * l + k];
  }

  Mat3<T> apply(const Mat3<T>& g) const {
    Mat3<T> r;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        T s(0.0);
        for (std::size_t l = 0; l < 3; ++l)
          for (std::size_t k = 0; k < 3; ++k) s += (*this)(i, j, l, k) * g(k, l);
        r(i, j) = s;
      }
    return r;
  }

  // Builds the tensor from a linear map G -> A[G].
  template <class LinearMap>
  static Tensor4 from_map(LinearMap&& map) {
    Tensor4 t;
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t l = 0; l < 3; ++l) {
        Mat3<T> e;
        e(k, l) = T(1.0);
        const Mat3<T> r = map(e);
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < 3; ++j) t(i, j, l, k) = r(i, j);
      }
    return t;
  }
};

}  // namespace fshell

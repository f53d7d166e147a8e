#pragma once

#include <cmath>
#include <concepts>
#include <type_traits>

namespace fshell {

inline double base_value(double x) { return x; }
inline double magnitude(double x) { return std::abs(x); }

// Commutative ring with division by elements whose base part is invertible.
// Plain doubles and perturbation scalars both qualify.
template <class T>
concept ScalarAlgebra = std::copyable<T> && requires(T a, T b, double d) {
  { T(d) };
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { a / b } -> std::convertible_to<T>;
  { -a } -> std::convertible_to<T>;
  { a += b };
  { a -= b };
  { a *= b };
  { base_value(a) } -> std::convertible_to<double>;
  { magnitude(a) } -> std::convertible_to<double>;
};

}  // namespace fshell

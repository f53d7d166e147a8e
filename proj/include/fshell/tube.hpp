#pragma once

#include "fshell/material.hpp"

namespace fshell {

// Thick-walled tube with inner radius A and wall thickness 2h (SI).
struct TubeGeometry {
  double A = 1.43e-3;
  double h = 0.13e-3;
  double L = 10e-3;

  double hstar() const { return 2.0 * h / A; }
  double B() const { return A + 2.0 * h; }
  void validate() const;
};

// Axisymmetric base state r = r(R), z = λ_z X with the inner-surface jet of
// r and p in Z = R - A.
struct TubeState {
  double lambda_a = 1.0;
  double lambda_z = 1.0;
  double P = 0.0;
  double r0 = 0.0, r1 = 0.0, r2 = 0.0;
  double p0 = 0.0, p1 = 0.0;
  double I0 = 1.0, I1 = 0.0;
  // Diagonal stress coefficients in (e_Θ⊗e_θ, e_X⊗e_z, e_R⊗e_r).
  double S0_tt = 0.0, S0_xx = 0.0, S0_rr = 0.0;
  double S1_tt = 0.0, S1_xx = 0.0, S1_rr = 0.0;
};

struct LoadResult {
  double P = 0.0;
  double F = 0.0;      // reduced axial force (end load minus πa²P)
  double Fstar = 0.0;  // F / (πA²)
  double end_load = 0.0;  // F + πa²P
};

enum class LoadModel { asymptotic, exact };

TubeState closed_recurrence(double lambda_a, double lambda_z, double P, const TubeGeometry& geom,
                            const HgoMaterial& mat);

// Two-term expansions in h* obtained from the shell equations.
LoadResult asymptotic_loads(double lambda_a, double lambda_z, const TubeGeometry& geom, const HgoMaterial& mat);

// Exact solution of the three-dimensional problem by quadrature.
LoadResult exact_loads(double lambda_a, double lambda_z, const TubeGeometry& geom, const HgoMaterial& mat);

// Two-term Taylor expansion of the exact solution in h*.
LoadResult exact_two_term(double lambda_a, double lambda_z, const TubeGeometry& geom, const HgoMaterial& mat);

LoadResult loads(LoadModel model, double lambda_a, double lambda_z, const TubeGeometry& geom,
                 const HgoMaterial& mat);

// λ_a with P(λ_a) = P on the bracket [0.5, 3].
double solve_inflation(double P, double lambda_z, const TubeGeometry& geom, const HgoMaterial& mat,
                       LoadModel model);

struct BalanceResult {
  double residual = 0.0;   // (S0_Θθ + h S1_Θθ)/A - q⁻_R/(2h)
  double axial_force = 0.0;  // reduced F from the edge resultant
};

BalanceResult balance_residual(const TubeState& state, double P, const TubeGeometry& geom, const HgoMaterial& mat);

// Strain energy ψ(λ, λ_z) of the plane-strain tube deformation and its partials.
struct PsiDerivatives {
  double l = 0.0, z = 0.0, ll = 0.0, lz = 0.0;
};
PsiDerivatives psi_derivatives(double lambda, double lambda_z, const HgoMaterial& mat);

}  // namespace fshell

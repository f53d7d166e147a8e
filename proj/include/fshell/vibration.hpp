#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "fshell/cylinder.hpp"
#include "fshell/tube.hpp"

namespace fshell {

using cplx = std::complex<double>;

// m_ij(ω²) = constant + ω² · slope.
struct ModeEntry {
  cplx constant;
  cplx slope;
  cplx at(double omega_sq) const { return constant + omega_sq * slope; }
};

// Rows: e_Θ, e_X and normal balance. Columns: amplitudes U, V, W.
struct ModeMatrix {
  double n = 0.0;
  std::array<std::array<ModeEntry, 3>, 3> m;
};

enum class Branch { axial, circumferential_radial, radial_circumferential };

std::string branch_name(Branch b);

struct ModeResult {
  int n = 0;
  Branch branch = Branch::axial;
  double omega_sq = 0.0;    // rad²/s²
  double omega_star = 0.0;  // NaN when ω² < 0
  bool is_real = true;
  bool ambiguous = false;   // continuity labelling could not separate the coupled roots
  bool degenerate = false;  // D₂ had a vanishing ω⁴ coefficient and was solved as affine
};

CylinderShell cylinder_shell(const TubeState& base, const TubeGeometry& geom, const HgoMaterial& mat);

// Residual of the shell equations at Θ = 0 for x⁽⁰⁾ = x_b + ε(W e_R + U e_Θ + V e_X) exp(i(nΘ - ωt)),
// as (e_Θ, e_X, n) components.
Vec3<Perturb> mode_residual(const CylinderShell& shell, double n, double omega_sq, const std::array<cplx, 3>& uvw);

ModeMatrix assemble_mode_matrix(const TubeState& base, double n, const TubeGeometry& geom, const HgoMaterial& mat);
ModeMatrix assemble_mode_matrix(const CylinderShell& shell, double n);

// Coefficients (ω⁴, ω², 1) of D₂ = m11 m33 - m13 m31.
std::array<cplx, 3> d2_coefficients(const ModeMatrix& mm);

double omega_star(double omega_sq, const TubeGeometry& geom, const HgoMaterial& mat);

std::vector<ModeResult> frequencies(const TubeState& base, int n, const TubeGeometry& geom, const HgoMaterial& mat);

struct CoupledRoots {
  std::array<double, 2> omega_sq;  // circumferential-radial, radial-circumferential
  bool ambiguous = false;
  bool degenerate = false;
};

// Labels the two roots of D₂ by continuation from n = 0, where the m11 root
// is circumferential and the m33 root radial.
CoupledRoots classify(const CylinderShell& shell, int n);

}  // namespace fshell

#pragma once

#include <array>
#include <complex>
#include <functional>
#include <random>

#include "fshell/geometry.hpp"
#include "fshell/material.hpp"
#include "fshell/tube.hpp"
#include "fshell/vibration.hpp"

namespace oracle {

using fshell::HgoMaterial;
using fshell::Mat3d;
using fshell::Vec3d;
using cplx = std::complex<double>;

// Sphere of radius R, r = R(sin u cos v, sin u sin v, cos u); outward normal.
fshell::SurfaceChart sphere_chart(double R);

// W at F = diag(λ_Θ, λ_X, λ_R) in the (e_Θ, e_X, e_R) axes, term by term.
double hgo_energy_diagonal(const HgoMaterial& mat, double l_theta, double l_x, double l_r);

// Central difference of a scalar function of F, in the (∂W/∂F)_ij = ∂W/∂F_ji layout.
Mat3d fd_gradient(const std::function<double(const Mat3d&)>& f, const Mat3d& F, double step);

// d/dt A¹(F + tH)[G] at t = 0, by hand differentiation of the HGO fibre terms.
Mat3d analytic_a2(const HgoMaterial& mat, const fshell::Fibres& fib, const Mat3d& F, const Mat3d& G,
                  const Mat3d& H);

Mat3d random_unimodular(std::mt19937& rng, double spread);
Mat3d random_matrix(std::mt19937& rng, double spread);

// Thick-wall loads by radial integration of the Cauchy stress differences,
// with Boost's Gauss–Kronrod rule.
struct ThickWall {
  double P = 0.0;
  double Fstar = 0.0;
};
ThickWall thick_wall_loads(double lambda_a, double lambda_z, const fshell::TubeGeometry& geom, const HgoMaterial& mat);

// m_ij at ω² from central differences (Richardson-extrapolated) of the real
// shell residual on an N-point Θ-grid with spectral Θ-derivatives.
std::array<std::array<cplx, 3>, 3> spectral_mode_matrix(const fshell::CylinderShell& shell, int n, double omega_sq,
                                                        int grid = 32, double rel_step = 1e-4);

}  // namespace oracle

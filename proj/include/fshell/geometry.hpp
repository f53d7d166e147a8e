#pragma once

#include <array>
#include <functional>

#include "fshell/tensor.hpp"

namespace fshell {

using Vec3d = Vec3<double>;
using Mat3d = Mat3<double>;

// Position and its partials with respect to (θ¹, θ²) at one coordinate pair.
struct ChartJet {
  Vec3d r;
  std::array<Vec3d, 2> d;       // r_,α
  std::array<Vec3d, 3> dd;      // r_,11  r_,12  r_,22
};

enum class ChartKind { cylinder, user };

struct SurfaceChart {
  ChartKind kind = ChartKind::user;
  double radius = 0.0;  // cylinder only
  std::function<ChartJet(double, double)> eval;

  // r(Θ, X) = (A cosΘ, A sinΘ, X); e_R is the outward unit normal.
  static SurfaceChart cylinder(double A);
  static SurfaceChart user(std::function<ChartJet(double, double)> f);
};

struct SurfacePoint {
  Vec3d r;
  std::array<Vec3d, 2> g;    // covariant g_α
  std::array<Vec3d, 2> gu;   // contravariant g^α
  Vec3d n;
  Mat3d k;                   // -n_,α ⊗ g^α, annihilates n
  double H = 0.0;
  double K = 0.0;
  Mat3d proj;                // I - n ⊗ n

  // Largest |principal curvature|.
  double spectral_radius() const;
};

struct EdgeFrame {
  Vec3d tau;
  Vec3d nu;
  Vec3d n;
  double Z = 0.0;
  double sqrt_g_tau = 1.0;
};

struct ThicknessMeasures {
  double mu = 1.0;
  Mat3d lateral_weight;
};

// Maximum allowed |Z|·ρ(k).
inline constexpr double thickness_bound = 0.95;

SurfacePoint chart_frame(const SurfaceChart& chart, double theta1, double theta2);

ThicknessMeasures thickness_measures(const SurfacePoint& point, double Z);

// tau must be a unit tangent vector at the point.
EdgeFrame edge_frame(const SurfacePoint& point, const Vec3d& tau, double Z);

}  // namespace fshell

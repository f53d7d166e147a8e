#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fshell/commands.hpp"
#include "fshell/vibration.hpp"
#include "oracles.hpp"

using namespace fshell;

namespace {

TubeState exact_base(double la, double lz, const TubeGeometry& g, const HgoMaterial& m) {
  return closed_recurrence(la, lz, exact_loads(la, lz, g, m).P, g, m);
}

double row_scale(const std::array<std::array<cplx, 3>, 3>& m, std::size_t i) {
  return std::max({std::abs(m[i][0]), std::abs(m[i][1]), std::abs(m[i][2])});
}

}  // namespace

TEST(ModeMatrix, MatchesSpectralFiniteDifferences) {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> la_d(1.05, 1.5), lz_d(1.0, 1.5), phi_d(0.2, 1.2);
  const TubeGeometry g;
  for (int trial = 0; trial < 3; ++trial) {
    HgoMaterial m;
    m.phi = phi_d(rng);
    const double la = la_d(rng), lz = lz_d(rng);
    const int n = 1 + trial;
    const TubeState s = exact_base(la, lz, g, m);
    const CylinderShell sh = cylinder_shell(s, g, m);
    const ModeMatrix mm = assemble_mode_matrix(sh, n);
    const double w_ref = m.c / (m.rho * 4.0 * g.h * g.h) * n * n;

    const auto o0 = oracle::spectral_mode_matrix(sh, n, 0.0);
    const auto o1 = oracle::spectral_mode_matrix(sh, n, 0.5 * w_ref);
    std::array<std::array<cplx, 3>, 3> slope{};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) slope[i][j] = (o1[i][j] - o0[i][j]) / (0.5 * w_ref);

    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_LE(std::abs(mm.m[i][j].constant - o0[i][j]), 1e-7 * row_scale(o0, i))
            << "constant m" << i + 1 << j + 1 << " trial " << trial;
        EXPECT_LE(std::abs(mm.m[i][j].slope - slope[i][j]), 1e-7 * row_scale(slope, i))
            << "slope m" << i + 1 << j + 1 << " trial " << trial;
      }
  }
}

TEST(ModeMatrix, SparsityPattern) {
  const TubeGeometry g;
  for (double phi_deg : {29.0, 45.0, 62.0})
    for (double lz : {1.0, 1.3}) {
      HgoMaterial m;
      m.phi = phi_deg * M_PI / 180.0;
      const TubeState s = exact_base(1.25, lz, g, m);
      for (int n = 0; n <= 3; ++n) {
        const ModeMatrix mm = assemble_mode_matrix(s, n, g, m);
        double scale = 0.0;
        for (const auto& row : mm.m)
          for (const ModeEntry& e : row) scale = std::max({scale, std::abs(e.constant), std::abs(e.slope) * m.c / m.rho});
        for (auto [i, j] : {std::pair{0, 1}, {1, 0}, {1, 2}, {2, 1}}) {
          EXPECT_LE(std::abs(mm.m[i][j].constant), 1e-12 * scale);
          EXPECT_LE(std::abs(mm.m[i][j].slope) * m.c / m.rho, 1e-12 * scale);
        }
        if (n == 0) {
          EXPECT_LE(std::abs(mm.m[0][2].constant), 1e-12 * scale);
          EXPECT_LE(std::abs(mm.m[2][0].constant), 1e-12 * scale);
        }
      }
    }
}

TEST(ModeMatrix, UnloadedAxialEntryIsShearLike) {
  const TubeGeometry g;
  const HgoMaterial m;
  const TubeState s = closed_recurrence(1.0, 1.0, 0.0, g, m);
  const ModeMatrix m1 = assemble_mode_matrix(s, 1, g, m);
  const ModeMatrix m2 = assemble_mode_matrix(s, 2, g, m);
  const ModeMatrix m3 = assemble_mode_matrix(s, 3, g, m);
  EXPECT_LT(m1.m[1][1].constant.real(), 0.0);
  EXPECT_GT(m1.m[1][1].slope.real(), 0.0);
  EXPECT_NEAR(m2.m[1][1].constant.real() / m1.m[1][1].constant.real(), 4.0, 1e-9);
  EXPECT_NEAR(m3.m[1][1].constant.real() / m1.m[1][1].constant.real(), 9.0, 1e-9);
  EXPECT_NEAR(m3.m[1][1].slope.real() / m1.m[1][1].slope.real(), 1.0, 1e-9);
}

TEST(PerturbPipeline, ZeroAmplitudeReproducesBase) {
  const TubeGeometry g;
  const HgoMaterial m;
  const TubeState s = exact_base(1.3, 1.1, g, m);
  const CylinderShell sh = cylinder_shell(s, g, m);
  const MidsurfaceData<double> d = cylinder_base_data(sh);
  const ThicknessJet<double> jd = cylinder_jet(d, ThetaDerivation{}, m, 2);

  MidsurfaceData<Perturb> dp;
  dp.point = d.point;
  dp.fibres = d.fibres;
  dp.x0 = Vec3<Perturb>(d.x0);
  dp.grad_x0 = Mat3<Perturb>(d.grad_x0);
  dp.pressure = d.pressure;
  const ThicknessJet<Perturb> jp = cylinder_jet(dp, ThetaDerivation{2.0}, m, 2);

  for (std::size_t o = 0; o < 3; ++o) {
    EXPECT_EQ(jp.p[o].base, jd.p[o]);
    EXPECT_EQ(jp.p[o].amp, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < 9; ++i) {
      EXPECT_EQ(jp.S[o].m[i].base, jd.S[o].m[i]);
      EXPECT_EQ(jp.S[o].m[i].amp, cplx(0.0, 0.0));
      EXPECT_EQ(jp.F[o].m[i].base, jd.F[o].m[i]);
    }
  }
  for (std::size_t o = 0; o < 4; ++o)
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(jp.x[o][i].base, jd.x[o][i]);
      EXPECT_EQ(jp.x[o][i].amp, cplx(0.0, 0.0));
    }
}

TEST(Frequencies, AxialBranchIsLinearInN) {
  const TubeGeometry g;
  const HgoMaterial m;
  const TubeState s = exact_base(1.3, 1.2, g, m);
  const double w1 = frequencies(s, 1, g, m)[0].omega_star;
  for (int n = 2; n <= 5; ++n) EXPECT_NEAR(frequencies(s, n, g, m)[0].omega_star / (n * w1), 1.0, 1e-9);
}

TEST(Frequencies, RigidBodyModesAtZeroLoad) {
  const TubeGeometry g;
  const HgoMaterial m;
  const TubeState s = closed_recurrence(1.0, 1.0, 0.0, g, m);
  const auto r0 = frequencies(s, 0, g, m);
  const auto r1 = frequencies(s, 1, g, m);
  EXPECT_LE(omega_star(std::abs(r0[0].omega_sq), g, m), 1e-6);
  EXPECT_LE(omega_star(std::abs(r1[1].omega_sq), g, m), 1e-6);
}

TEST(Frequencies, NonRealRootIsFlagged) {
  RunConfig c;
  c.P_kPa = 1.0;
  const TubeState s = base_state(c);
  const auto r = frequencies(s, 0, c.geometry(), c.material());
  EXPECT_EQ(r[1].branch, Branch::circumferential_radial);
  EXPECT_LT(r[1].omega_sq, 0.0);
  EXPECT_FALSE(r[1].is_real);
  EXPECT_TRUE(std::isnan(r[1].omega_star));
}

TEST(Frequencies, OmegaStarDefinition) {
  const TubeGeometry g;
  const HgoMaterial m;
  const double w2 = 4.0e6;
  EXPECT_DOUBLE_EQ(omega_star(w2, g, m), 2000.0 * 2.0 * g.h / std::sqrt(m.c / m.rho));
  EXPECT_TRUE(std::isnan(omega_star(-1.0, g, m)));
}

TEST(Frequencies, CoupledBranchesDecoupleAtNZero) {
  RunConfig c;
  c.P_kPa = 1.0;
  const TubeState s = base_state(c);
  const CylinderShell sh = cylinder_shell(s, c.geometry(), c.material());
  const ModeMatrix mm = assemble_mode_matrix(sh, 0.0);
  const CoupledRoots r = classify(sh, 0);
  EXPECT_NEAR(r.omega_sq[0], (-mm.m[0][0].constant / mm.m[0][0].slope).real(), 1e-9 * std::abs(r.omega_sq[0]));
  EXPECT_NEAR(r.omega_sq[1], (-mm.m[2][2].constant / mm.m[2][2].slope).real(), 1e-9 * std::abs(r.omega_sq[1]));
}

TEST(Frequencies, CoupledLabelsFollowContinuationFromNZero) {
  RunConfig c;
  c.P_kPa = 1.0;
  const TubeState s = base_state(c);
  const CylinderShell sh = cylinder_shell(s, c.geometry(), c.material());
  const auto r = frequencies(s, 2, c.geometry(), c.material());
  EXPECT_LT(r[1].omega_star, r[2].omega_star);
  EXPECT_FALSE(r[1].ambiguous);

  // Near n = 0 the lower D2 root sits next to the circumferential (m11) root.
  const ModeMatrix m0 = assemble_mode_matrix(sh, 0.0);
  const double w_circ = (-m0.m[0][0].constant / m0.m[0][0].slope).real();
  const double w_rad = (-m0.m[2][2].constant / m0.m[2][2].slope).real();
  const ModeMatrix ms = assemble_mode_matrix(sh, 0.01);
  const auto [a, b, cc] = d2_coefficients(ms);
  const cplx disc = std::sqrt(b * b - 4.0 * a * cc);
  const double lo = std::min(((-b - disc) / (2.0 * a)).real(), ((-b + disc) / (2.0 * a)).real());
  EXPECT_LT(std::abs(lo - w_circ), std::abs(lo - w_rad));
}

TEST(Frequencies, D2CoefficientsReproduceDeterminant) {
  const TubeGeometry g;
  const HgoMaterial m;
  const ModeMatrix mm = assemble_mode_matrix(exact_base(1.2, 1.0, g, m), 2, g, m);
  const auto [a, b, c] = d2_coefficients(mm);
  for (double w : {0.0, 1e6, 3e7}) {
    const cplx direct = mm.m[0][0].at(w) * mm.m[2][2].at(w) - mm.m[0][2].at(w) * mm.m[2][0].at(w);
    EXPECT_LE(std::abs(a * w * w + b * w + c - direct), 1e-10 * std::max(std::abs(direct), std::abs(c)));
  }
}

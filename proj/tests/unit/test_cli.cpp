#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "fshell/commands.hpp"
#include "fshell/config.hpp"
#include "fshell/parallel.hpp"
#include "fshell/table.hpp"

using namespace fshell;

namespace {

double real_cell(const Cell& c) { return std::get<double>(c); }

int config_error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line;
  }
  return -1;
}

std::filesystem::path scratch_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("fshell_test_" + name);
  std::ofstream(path) << text;
  return path;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FSHELL_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, Defaults) {
  const RunConfig c = parse_config("");
  EXPECT_EQ(c, RunConfig{});
  const HgoMaterial m = c.material();
  EXPECT_DOUBLE_EQ(m.c, 3000.0);
  EXPECT_DOUBLE_EQ(m.k1, 2363.2);
  EXPECT_DOUBLE_EQ(m.rho, 1190.0);
  const TubeGeometry g = c.geometry();
  EXPECT_DOUBLE_EQ(g.A, 1.43e-3);
  EXPECT_DOUBLE_EQ(g.h, 0.13e-3);
}

TEST(Config, DegreesConvertToRadians) {
  EXPECT_DOUBLE_EQ(parse_config("material.phi_deg = 45").material().phi, M_PI / 4.0);
}

TEST(Config, RoundTrip) {
  RunConfig c;
  c.A_mm = 1.7;
  c.thickness_mm = 0.1 + 0.2;
  c.phi_deg = 62.0;
  c.lambda_a = 1.234567890123;
  c.lambda_z = 1.3;
  c.n_min = 1;
  c.n_max = 5;
  c.sweep = SweepSpec{"lambda_z", 1.0, 1.4, 0.05};
  EXPECT_EQ(parse_config(format_config(c)), c);
  RunConfig d;
  d.P_kPa = 1.0;
  EXPECT_EQ(parse_config(format_config(d)), d);
}

TEST(Config, CommentsAndWhitespace) {
  const RunConfig c = parse_config("# header\n\n  load.P_kPa =  2.5   # inline\r\nload.lambda_z=1.2\n");
  ASSERT_TRUE(c.P_kPa.has_value());
  EXPECT_EQ(*c.P_kPa, 2.5);
  EXPECT_EQ(c.lambda_z, 1.2);
}

TEST(Config, ErrorsCarryLineNumbers) {
  EXPECT_EQ(config_error_line("load.P_kPa = 1\n\ngeometry.radius = 2\n"), 3);
  EXPECT_EQ(config_error_line("material.c_kPa = abc\n"), 1);
  EXPECT_EQ(config_error_line("load.lambda_z = 1\nload.lambda_z = 2\n"), 2);
  EXPECT_EQ(config_error_line("\nnot a pair\n"), 2);
  EXPECT_EQ(config_error_line("vibration.n_min = 1.5\n"), 1);
}

TEST(Config, PressureAndStretchAreExclusive) {
  EXPECT_EQ(config_error_line("load.P_kPa = 1\nload.lambda_a = 1.2\n"), 2);
}

TEST(Config, RejectsWallAsThickAsRadius) {
  EXPECT_EQ(config_error_line("geometry.thickness_mm = 1.43\n"), 1);
  RunConfig c;
  c.thickness_mm = 1.43;
  EXPECT_THROW(run_verify(c), ConfigError);
}

TEST(Config, IncompleteSweepBlock) {
  EXPECT_EQ(config_error_line("sweep.variable = lambda_a\nsweep.start = 1\nsweep.stop = 2\n"), 1);
  EXPECT_EQ(config_error_line("sweep.variable = radius\nsweep.start = 1\nsweep.stop = 2\nsweep.step = 0.1\n"), 1);
}

TEST(Sweep, ParseAndPoints) {
  const SweepSpec s = parse_sweep("lambda_a=1:1.5:0.1");
  EXPECT_EQ(s, (SweepSpec{"lambda_a", 1.0, 1.5, 0.1}));
  const auto p = s.points();
  ASSERT_EQ(p.size(), 6u);
  EXPECT_EQ(p.front(), 1.0);
  EXPECT_EQ(p.back(), 1.5);
  EXPECT_EQ(parse_sweep("P_kPa=2:0:-1").points(), (std::vector<double>{2.0, 1.0, 0.0}));
}

TEST(Sweep, RejectsMalformedText) {
  EXPECT_THROW(parse_sweep("lambda_a"), ConfigError);
  EXPECT_THROW(parse_sweep("lambda_a=1:2"), ConfigError);
  EXPECT_THROW(parse_sweep("lambda_a=1:2:0"), ConfigError);
  EXPECT_THROW(parse_sweep("lambda_a=2:1:0.1"), ConfigError);
  EXPECT_THROW(parse_sweep("radius=1:2:0.1"), ConfigError);
  EXPECT_THROW(parse_sweep("lambda_a=1:2:x"), ConfigError);
}

TEST(Sweep, WithValueKeepsLoadExclusive) {
  RunConfig c;
  c.P_kPa = 1.0;
  const RunConfig a = with_value(c, "lambda_a", 1.2);
  EXPECT_FALSE(a.P_kPa.has_value());
  EXPECT_EQ(a.lambda_a, 1.2);
  const RunConfig b = with_value(a, "P_kPa", 2.0);
  EXPECT_FALSE(b.lambda_a.has_value());
  EXPECT_EQ(with_value(c, "phi_deg", 45.0).phi_deg, 45.0);
  EXPECT_THROW(with_value(c, "radius", 1.0), ConfigError);
}

TEST(Table, FormatReal) {
  EXPECT_EQ(format_real(-0.0), "0");
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_real(1.5), "1.5");
  EXPECT_EQ(std::stod(format_real(M_PI)), M_PI);
}

TEST(Table, CsvLayout) {
  ResultTable t;
  t.columns = {"x", "n", "branch"};
  t.add_row({0.25, std::int64_t{3}, std::string("axial")});
  EXPECT_EQ(t.to_csv(), "x,n,branch\n0.25,3,axial\n");
  EXPECT_THROW(t.add_row({1.0}), std::logic_error);
}

TEST(Parallel, KeepsIndexOrder) {
  const auto out = parallel_map(200, [](std::size_t i) { return i * i; }, 8);
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], i * i);
}

TEST(Parallel, RethrowsLowestIndexFailure) {
  try {
    parallel_map(
        50,
        [](std::size_t i) -> int {
          if (i == 7 || i == 30) throw std::runtime_error(std::to_string(i));
          return 0;
        },
        4);
    FAIL() << "no exception";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "7");
  }
}

TEST(Inflate, ReferencePointIsUnloaded) {
  RunConfig c;
  c.lambda_a = 1.0;
  const ResultTable t = run_inflate(c, 1);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.columns[0], "lambda_a");
  EXPECT_EQ(real_cell(t.rows[0][0]), 1.0);
  for (std::size_t j = 1; j < 5; ++j) EXPECT_NEAR(real_cell(t.rows[0][j]), 0.0, 1e-12);
}

TEST(Inflate, ModelsAgreeAlongStretchSweep) {
  // The pointwise gap between the P columns shrinks like h*³ as the wall thins.
  double worst[2] = {0.0, 0.0};
  for (int k = 0; k < 2; ++k) {
    RunConfig c;
    c.thickness_mm = k == 0 ? 0.13 : 0.065;
    c.sweep = SweepSpec{"lambda_a", 1.0, 1.5, 0.05};
    const ResultTable t = run_inflate(c, 0);
    ASSERT_EQ(t.rows.size(), 11u);
    for (const auto& r : t.rows) worst[k] = std::max(worst[k], std::abs(real_cell(r[1]) - real_cell(r[2])));
  }
  EXPECT_GE(worst[0] / worst[1], 6.0);
  EXPECT_LE(worst[0] / worst[1], 10.0);
}

TEST(Inflate, AxialForceGrowsWithAxialStretch) {
  RunConfig c;
  c.lambda_a = 1.0;
  c.sweep = SweepSpec{"lambda_z", 1.0, 1.4, 0.05};
  const ResultTable t = run_inflate(c, 0);
  EXPECT_NEAR(real_cell(t.rows.front()[4]), 0.0, 1e-12);
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    EXPECT_GT(real_cell(t.rows[i][3]), real_cell(t.rows[i - 1][3]));
    EXPECT_GT(real_cell(t.rows[i][4]), real_cell(t.rows[i - 1][4]));
  }
}

TEST(Inflate, RejectsUnsupportedSweep) {
  RunConfig c;
  c.lambda_a = 1.1;
  c.sweep = SweepSpec{"phi_deg", 0.0, 10.0, 5.0};
  EXPECT_THROW(run_inflate(c), ConfigError);
  RunConfig d;
  EXPECT_THROW(run_inflate(d), ConfigError);
}

TEST(Vibrate, ColumnsAndRowOrder) {
  RunConfig c;
  c.sweep = SweepSpec{"P_kPa", 0.5, 1.5, 0.5};
  c.n_max = 2;
  const ResultTable t = run_vibrate(c, 0);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"P_kPa", "n", "branch", "omega_sq", "omega_star", "is_real"}));
  ASSERT_EQ(t.rows.size(), 3u * 3u * 3u);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_EQ(real_cell(t.rows[i][0]), 0.5 * static_cast<double>(1 + i / 9));
    EXPECT_EQ(std::get<std::int64_t>(t.rows[i][1]), static_cast<std::int64_t>((i / 3) % 3));
  }
}

TEST(Vibrate, RequiresLoad) { EXPECT_THROW(run_vibrate(RunConfig{}), ConfigError); }

TEST(Determinism, CsvIsIdenticalAcrossRunsAndThreadCounts) {
  RunConfig c;
  c.sweep = SweepSpec{"lambda_z", 1.0, 1.6, 0.1};
  c.P_kPa = 1.0;
  const std::string a = run_vibrate(c, 1).to_csv();
  EXPECT_EQ(a, run_vibrate(c, 1).to_csv());
  EXPECT_EQ(a, run_vibrate(c, 7).to_csv());
  RunConfig d;
  d.sweep = SweepSpec{"lambda_a", 0.9, 1.6, 0.05};
  EXPECT_EQ(run_inflate(d, 1).to_csv(), run_inflate(d, 5).to_csv());
}

TEST(Verify, DefaultsPass) {
  const VerifyReport r = run_verify(RunConfig{});
  EXPECT_TRUE(r.passed()) << r.to_text();
  EXPECT_FALSE(r.checks.empty());
}

TEST(Verify, NeoHookeanPasses) {
  RunConfig c;
  c.k1_kPa = 0.0;
  const VerifyReport r = run_verify(c);
  EXPECT_TRUE(r.passed()) << r.to_text();
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_cli("verify"), 0);
  EXPECT_EQ(run_cli("inflate --sweep lambda_a=1:1.2:0.1"), 0);
  EXPECT_EQ(run_cli("bogus"), 2);
  EXPECT_EQ(run_cli("inflate --sweep lambda_a=1:1.2"), 2);
  EXPECT_EQ(run_cli("inflate --config /nonexistent/fshell.cfg"), 2);
  const auto bad = scratch_file("bad.cfg", "load.lambda_a = 1.1\ngeometry.thickness_mm = 1.43\n");
  EXPECT_EQ(run_cli("inflate --config " + bad.string()), 2);
  // No stretch in the bracket holds 1 MPa of suction.
  const auto hard = scratch_file("hard.cfg", "load.P_kPa = -1000\nvibration.n_max = 0\n");
  EXPECT_EQ(run_cli("vibrate --config " + hard.string()), 3);
  std::filesystem::remove(bad);
  std::filesystem::remove(hard);
}

TEST(Binary, WritesCsvFile) {
  const auto out = std::filesystem::temp_directory_path() / "fshell_test_out.csv";
  const auto cfg = scratch_file("ok.cfg", "load.lambda_a = 1.2\n");
  ASSERT_EQ(run_cli("inflate --config " + cfg.string() + " --out " + out.string()), 0);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "lambda_a,P_asym_kPa,P_exact_kPa,Fstar_asym_kPa,Fstar_exact_kPa");
  RunConfig c;
  c.lambda_a = 1.2;
  std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(header + "\n" + rest, run_inflate(c).to_csv());
  std::filesystem::remove(out);
  std::filesystem::remove(cfg);
}

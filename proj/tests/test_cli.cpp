/// @file test_cli.cpp
/// @brief Recipe and config parsing, the subcommands in process, and exit codes of the installed binary.

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "ns2d/error.hpp"
#include "ns2d/field_io.hpp"
#include "ns2d/fields.hpp"
#include "ns2d/moments.hpp"
#include "recipe.hpp"
#include "run_config.hpp"
#include "verify.hpp"

using namespace ns2d;
using namespace ns2d::cli;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("ns2d_cli_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

RunConfig small_config(const std::string& recipe, const std::filesystem::path& out) {
  RunConfig c;
  c.set("grid.n", "64");
  c.set("grid.half_width", "10");
  c.set("sim.dt", "0.02");
  c.set("sim.tau_end", "0.6");
  c.set("sim.record_every", "5");
  c.set("initial_data", recipe);
  c.out = out;
  return c;
}

int shell(const std::string& args) {
  const std::string cmd = std::string(NS2D_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::string> lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

//==============================================================================
// Recipes
//==============================================================================

TEST(Recipe, ParsesNamedAndHermiteTerms) {
  const auto terms = parse_recipe("0.3*G + 0.2*F1 - 0.1*H3 + phi(3,0) - 2e-2*phi(2, 2)");
  ASSERT_EQ(terms.size(), 5u);
  EXPECT_DOUBLE_EQ(terms[0].coefficient, 0.3);
  EXPECT_EQ(std::get<Profile>(terms[0].shape), Profile::G);
  EXPECT_DOUBLE_EQ(terms[2].coefficient, -0.1);
  EXPECT_EQ(std::get<Profile>(terms[2].shape), Profile::H3);
  EXPECT_DOUBLE_EQ(terms[3].coefficient, 1.0);
  EXPECT_EQ(std::get<HermiteIndex>(terms[3].shape), HermiteIndex(3, 0));
  EXPECT_DOUBLE_EQ(terms[4].coefficient, -0.02);
  EXPECT_EQ(std::get<HermiteIndex>(terms[4].shape), HermiteIndex(2, 2));
}

TEST(Recipe, EvaluatesLinearCombination) {
  const Grid g(128, 12.0);
  const MomentSet m = extract_moments(evaluate_recipe(g, parse_recipe("0.3*G + 0.2*F1 - 0.1*H3")));
  const std::array<double, 6> expected{0.3, 0.2, 0.0, 0.0, 0.0, -0.1};
  for (int k = 0; k < 6; ++k) EXPECT_NEAR(m.as_array()[k], expected[k], 1e-8);
}

TEST(Recipe, RejectsMalformed) {
  for (const char* bad : {"", "0.3*", "0.3*Q", "G +", "phi(3)", "phi(9,0)", "nan*G", "0.1*G 0.2*F1", "inf*K"}) {
    EXPECT_THROW(parse_recipe(bad), ConfigError) << bad;
  }
}

//==============================================================================
// Config
//==============================================================================

TEST(Config, SetAndOverride) {
  RunConfig c;
  c.apply_override("grid.n=128");
  c.apply_override("sim.dealias=false");
  c.set("seed", "42");
  EXPECT_EQ(c.n, 128);
  EXPECT_FALSE(c.sim.dealias);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_TRUE(c.is_set("grid.n"));
  EXPECT_FALSE(c.is_set("sim.dt"));
  EXPECT_THROW(c.apply_override("grid.n"), ConfigError);
  EXPECT_THROW(c.set("grid.bogus", "1"), ConfigError);
  EXPECT_THROW(c.set("sim.dt", "fast"), ConfigError);
  EXPECT_THROW(c.set("sim.dealias", "maybe"), ConfigError);
  const nlohmann::json j = c;
  EXPECT_EQ(j.at("grid").at("n"), 128);
}

TEST(Config, LoadsFile) {
  const auto dir = fresh_dir("config");
  {
    std::ofstream f(dir / "run.cfg");
    f << "# comment\n"
      << "grid.n = 64   # trailing\n"
      << "\n"
      << "initial_data = 0.05*K\n"
      << "sim.tau_end = 2.5\n";
  }
  RunConfig c;
  c.load_file(dir / "run.cfg");
  EXPECT_EQ(c.n, 64);
  EXPECT_EQ(c.recipe, "0.05*K");
  EXPECT_DOUBLE_EQ(c.sim.tau_end, 2.5);
  {
    std::ofstream f(dir / "bad.cfg");
    f << "grid.n 64\n";
  }
  EXPECT_THROW(c.load_file(dir / "bad.cfg"), ConfigError);
  EXPECT_THROW(c.load_file(dir / "missing.cfg"), ConfigError);
  std::filesystem::remove_all(dir);
}

//==============================================================================
// Commands in process
//==============================================================================

TEST(Commands, SimulateWritesOutputs) {
  const auto dir = fresh_dir("simulate");
  RunConfig c = small_config("0.05*G + 0.05*F1", dir);
  c.set("sim.snapshot_every", "15");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_simulate(c, out, err), kPass);
  EXPECT_EQ(lines(dir / "trajectory.csv").size(), 1u + 7u);
  EXPECT_TRUE(std::filesystem::exists(dir / "snapshots" / "snap_000300.bin"));
  std::ifstream in(dir / "summary.json");
  const nlohmann::json s = nlohmann::json::parse(in);
  EXPECT_EQ(s.at("records"), 7);
  EXPECT_TRUE(s.at("conservation").at("pass").get<bool>());
  EXPECT_FALSE(s.contains("energy"));
  EXPECT_EQ(s.at("config").at("grid").at("n"), 64);
  std::filesystem::remove_all(dir);
}

TEST(Commands, SimulateRejectsMissingDirectory) {
  RunConfig c = small_config("0.05*G", std::filesystem::temp_directory_path() / "ns2d_cli_absent" / "deeper");
  std::ostringstream out, err;
  EXPECT_THROW(cmd_simulate(c, out, err), IoError);
}

TEST(Commands, ExportAddsUnscaledColumns) {
  const auto dir = fresh_dir("export");
  RunConfig c = small_config("0.05*H2 + 0.05*K", dir);
  std::ostringstream out, err;
  ASSERT_EQ(cmd_simulate(c, out, err), kPass);
  RunConfig e;
  std::ostringstream csv;
  ASSERT_EQ(cmd_export(e, dir / "trajectory.csv", "csv", csv, err), kPass);
  std::istringstream rows(csv.str());
  std::string line;
  std::getline(rows, line);
  EXPECT_EQ(line.rfind("tau,t,alpha", 0), 0u);
  int count = 0;
  while (std::getline(rows, line)) {
    const double tau = std::stod(line.substr(0, line.find(',')));
    const auto second = line.find(',') + 1;
    const double t = std::stod(line.substr(second, line.find(',', second) - second));
    EXPECT_EQ(t, std::expm1(tau));
    ++count;
  }
  EXPECT_EQ(count, 7);
  std::ostringstream js;
  ASSERT_EQ(cmd_export(e, dir / "trajectory.csv", "json", js, err), kPass);
  EXPECT_EQ(nlohmann::json::parse(js.str()).at("records").size(), 7u);
  EXPECT_THROW(cmd_export(e, dir / "trajectory.csv", "xml", js, err), ConfigError);
  EXPECT_THROW(cmd_export(e, dir / "none.csv", "csv", js, err), IoError);
  std::filesystem::remove_all(dir);
}

TEST(Commands, ClassifyRejectsFirstMoments) {
  RunConfig c = small_config("0.05*F1", {});
  std::ostringstream out, err;
  EXPECT_EQ(cmd_classify(c, out, err), kPrecondition);
  EXPECT_NE(err.str().find("beta1"), std::string::npos);
}

TEST(Commands, ClassificationDefaults) {
  RunConfig c;
  const Grid g(128, 12.0);
  const SimConfig s = classification_settings(c, g);
  EXPECT_DOUBLE_EQ(s.tau_end, 34.0);
  EXPECT_LE(s.dt, SimConfig::max_stable_dt(g, true));
  c.set("sim.tau_end", "20");
  EXPECT_DOUBLE_EQ(classification_settings(c, g).tau_end, 20.0);
}

TEST(Commands, InitialFieldFromFile) {
  const auto dir = fresh_dir("initial");
  const Grid g(64, 10.0);
  RealField w = RealField::sample(g, [](double x, double y) { return std::exp(-(x * x + y * y)); });
  write_binary(dir / "w.bin", w);
  RunConfig c;
  c.set("grid.n", "64");
  c.set("grid.half_width", "10");
  c.set("initial_file", (dir / "w.bin").string());
  EXPECT_EQ((initial_field(c) - w).max_abs(), 0.0);
  RunConfig none;
  EXPECT_THROW(initial_field(none), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST(Commands, VerifyConstantsSuite) {
  const auto results = run_suite("constants", Grid(), 1);
  ASSERT_FALSE(results.empty());
  for (const auto& r : results) EXPECT_TRUE(r.pass) << r.name << " measured " << r.measured;
  EXPECT_THROW(run_suite("nonsense", Grid(), 1), ConfigError);
  std::ostringstream table;
  print_table(table, results);
  EXPECT_NE(table.str().find("kappa"), std::string::npos);
}

//==============================================================================
// Binary exit codes
//==============================================================================

TEST(Binary, ExitCodes) {
  const auto dir = fresh_dir("binary");
  const std::string small = " --set grid.n=64 --set sim.dt=0.02 --set sim.tau_end=0.4 --set sim.record_every=5";
  EXPECT_EQ(shell("--help"), 0);
  EXPECT_EQ(shell("simulate --out " + dir.string() + small + " --set initial_data=0.05*G"), 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "trajectory.csv"));
  EXPECT_EQ(shell("export " + (dir / "trajectory.csv").string() + " --format csv --out " + dir.string()), 0);
  EXPECT_EQ(lines(dir / "export.csv").size(), 1u + 5u);
  EXPECT_EQ(shell("export " + (dir / "trajectory.csv").string() + " --format xml"), 2);
  EXPECT_EQ(shell("simulate --out " + (dir / "absent").string() + small + " --set initial_data=0.05*G"), 2);
  EXPECT_EQ(shell("simulate --out " + dir.string() + small + " --set initial_data=0.05*Q"), 2);
  EXPECT_EQ(shell("simulate --out " + dir.string() + " --set grid.n=64 --set sim.dt=1 --set initial_data=0.05*G"), 3);
  EXPECT_EQ(shell("classify --set grid.n=64 --set initial_data=0.05*F1"), 3);
  EXPECT_EQ(shell("verify --suite constants"), 0);
  EXPECT_EQ(shell("verify --suite bogus"), 2);
  EXPECT_EQ(shell("frobnicate"), 2);
  std::filesystem::remove_all(dir);
}

TEST(Binary, DeterministicOutput) {
  const auto a = fresh_dir("det_a");
  const auto b = fresh_dir("det_b");
  const std::string args = " --set grid.n=64 --set sim.dt=0.02 --set sim.tau_end=0.4 --set initial_data=0.05*K+0.02*H2";
  ASSERT_EQ(shell("simulate --out " + a.string() + args), 0);
  ASSERT_EQ(shell("simulate --out " + b.string() + args), 0);
  EXPECT_EQ(lines(a / "trajectory.csv"), lines(b / "trajectory.csv"));
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}

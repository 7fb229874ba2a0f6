#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "entrec/commands.hpp"
#include "entrec/config.hpp"

using namespace entrec;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ENTREC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

CliConfig quick_gate() {
  CliConfig cfg;
  cfg.gate.tuples = 2;
  cfg.gate.characteristic_points = 20;
  cfg.gate.reduce_grid.points = 1025;
  return cfg;
}

}  // namespace

TEST_CASE("parse_config defaults") {
  const auto cfg = parse_config("");
  CHECK(cfg.experiment.lambda0 == doctest::Approx(800e-9));
  CHECK(cfg.experiment.delta_n == 0.01);
  CHECK(cfg.experiment.bandwidth_nm == 3.0);
  CHECK(cfg.experiment.sigma_convention == SigmaConvention::bandwidth_as_sigma);
  CHECK(cfg.experiment.length_unit == LengthUnit::retardance);
  CHECK(cfg.seed == 1);
}

TEST_CASE("parse_config values") {
  const auto cfg = parse_config("# recovery run\nL1 = 195\nscenario = recovery   # inline comment\n\n"
                                "sigma_convention=fwhm_of_f\nwith_chsh = true\nN = 1000\n");
  CHECK(cfg.experiment.L_1 == 195.0);
  CHECK(cfg.scenario == "recovery");
  CHECK(cfg.experiment.sigma_convention == SigmaConvention::fwhm_of_f);
  CHECK(cfg.with_chsh);
  CHECK(cfg.pairs == 1000);
}

TEST_CASE("parse_config errors name key and line") {
  auto expect_error = [](const std::string& text, const std::string& key, int line) {
    try {
      parse_config(text);
      FAIL("no error for: " << text);
    } catch (const ConfigError& e) {
      CHECK(e.key() == key);
      CHECK(e.line() == line);
      CHECK(std::string(e.what()).find(key) != std::string::npos);
    }
  };
  expect_error("delta_n = 1.5", "delta_n", 1);
  expect_error("L1 = 1\nbogus = 3", "bogus", 2);
  expect_error("\n\nL2 = 1.2.3", "L2", 3);
  expect_error("trials = 1", "trials", 1);
  expect_error("scenario = b", "scenario", 1);
  expect_error("L1 = -4", "L1", 1);
  expect_error("quad_points = 1024", "quad_points", 1);
}

TEST_CASE("command-line overrides") {
  auto cfg = parse_config("L1 = 195");
  apply_setting(cfg, "L1", "390");
  CHECK(cfg.experiment.L_1 == 390.0);
  CHECK_THROWS_AS(apply_setting(cfg, "nope", "1"), ConfigError);
}

TEST_CASE("format_g12") {
  CHECK(format_g12(0.1) == "0.1");
  CHECK(format_g12(1.0 / 3.0) == "0.333333333333");
  CHECK(format_g12(1e-20) == "1e-20");
  CHECK(format_g12(std::nan("")) == "nan");
}

TEST_CASE("sweep command output") {
  auto cfg = parse_config("scenario = a\nL2_start = 0\nL2_stop = 800\nL2_step = 20");
  std::ostringstream out, err;
  CHECK(run_sweep_command(cfg, out, err) == exit_code::ok);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "L2_lambda0,concurrence,success_prob");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 41);
  CHECK(out.str().find('\r') == std::string::npos);

  apply_setting(cfg, "with_chsh", "true");
  apply_setting(cfg, "L2_stop", "40");
  std::ostringstream out2;
  CHECK(run_sweep_command(cfg, out2, err) == exit_code::ok);
  CHECK(out2.str().rfind("L2_lambda0,concurrence,success_prob,S_max\n0,1,1,2.828", 0) == 0);
}

TEST_CASE("sweep command writes files and reports I/O errors") {
  const auto dir = std::filesystem::temp_directory_path() / "entrec_cli_test";
  std::filesystem::create_directories(dir);
  auto cfg = parse_config("L1 = 195\nL2_stop = 50");
  cfg.out = (dir / "sweep.csv").string();
  std::ostringstream out, err;
  CHECK(run_sweep_command(cfg, out, err) == exit_code::ok);
  CHECK(out.str().empty());
  CHECK(slurp(cfg.out).rfind("L2_lambda0,", 0) == 0);
  cfg.out = (dir / "missing" / "x.csv").string();
  CHECK(run_sweep_command(cfg, out, err) == exit_code::io);
  std::filesystem::remove_all(dir);
}

TEST_CASE("chsh and tomo reports") {
  auto cfg = parse_config("scenario = bell\ntrials = 5\nN = 10000");
  std::ostringstream out, err;
  CHECK(run_chsh_command(cfg, out, err) == exit_code::ok);
  CHECK(out.str().find("S_max: 2.82842712") != std::string::npos);
  std::ostringstream t1, t2;
  CHECK(run_tomo_command(cfg, t1, err) == exit_code::ok);
  CHECK(run_tomo_command(cfg, t2, err) == exit_code::ok);
  CHECK(t1.str() == t2.str());
  CHECK(t1.str().find("concurrence: ") != std::string::npos);
  CHECK(t1.str().find(" +- ") != std::string::npos);

  cfg = parse_config("scenario = recovery\nL1 = 195\nL2 = 195");
  std::ostringstream rec;
  CHECK(run_chsh_command(cfg, rec, err) == exit_code::ok);
  const auto pos = rec.str().find("S_max: ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(rec.str().substr(pos + 7)) > 2.0);
}

TEST_CASE("validate command") {
  auto cfg = quick_gate();
  std::ostringstream out, err;
  CHECK(run_validate_command(cfg, out, err) == exit_code::ok);
  CHECK(out.str().find("reduce/esd") != std::string::npos);

  cfg.gate.tol_characteristic = 1.0;
  cfg.gate.tol_reduce = 1.0;
  std::ostringstream out2;
  CHECK(run_validate_command(cfg, out2, err) == exit_code::ok);

  const CharacteristicFn broken = [](double dalpha, const Spectrum& sp) {
    const double x = dalpha * sp.sigma();
    return std::exp(-x * x / 8.0) * std::polar(1.0, dalpha * sp.omega0());
  };
  std::ostringstream out3, err3;
  CHECK(run_validate_command(quick_gate(), out3, err3, broken) == exit_code::validation_failed);
  CHECK(err3.str().find("check failed: characteristic") != std::string::npos);
}

TEST_CASE("binary exit codes") {
  CHECK(run_cli("sweep --set L2_stop=10") == 0);
  CHECK(run_cli("sweep --set delta_n=1.5") == 2);
  CHECK(run_cli("sweep --set bogus=1") == 2);
  CHECK(run_cli("tomo --set trials=1") == 2);
  CHECK(run_cli("nosuchcommand") == 2);
  CHECK(run_cli("sweep --config /nonexistent/cfg.ini") == 2);
  CHECK(run_cli("sweep --set L2_stop=10 --out /nonexistent/dir/x.csv") == 3);
  CHECK(run_cli("validate --set validate_tuples=1 --set tol_reduce=1e-300") == 1);
}

// entrec: sweep | chsh | tomo | validate

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "entrec/commands.hpp"

namespace {

entrec::CliConfig load(const std::string& path, const std::vector<std::string>& sets,
                       const std::optional<std::string>& out, const std::optional<std::uint64_t>& seed) {
  entrec::CliConfig cfg;
  if (!path.empty()) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw entrec::ConfigError("--config", 0, "cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    cfg = entrec::parse_config(ss.str());
  }
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw entrec::ConfigError(kv, 0, "--set expects key=value");
    entrec::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (out) cfg.out = *out;
  if (seed) {
    cfg.seed = *seed;
    cfg.gate.seed = *seed;
  }
  cfg.experiment.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement recovery under birefringent dephasing"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "key = value config file");
  app.add_option("--out", out, "output path (default: standard output)");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--set", sets, "override one config key (key=value), repeatable")->allow_extra_args(false);

  auto* sweep = app.add_subcommand("sweep", "concurrence curve as CSV");
  auto* chsh = app.add_subcommand("chsh", "reduced state, concurrence and CHSH maximum");
  auto* tomo = app.add_subcommand("tomo", "Monte-Carlo tomography error bars");
  auto* validate = app.add_subcommand("validate", "closed forms vs quadrature");
  for (auto* sub : {sweep, chsh, tomo, validate}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : entrec::exit_code::usage;
  }

  try {
    const auto cfg = load(config_path, sets, out, seed);
    if (*sweep) return entrec::run_sweep_command(cfg, std::cout, std::cerr);
    if (*chsh) return entrec::run_chsh_command(cfg, std::cout, std::cerr);
    if (*tomo) return entrec::run_tomo_command(cfg, std::cout, std::cerr);
    return entrec::run_validate_command(cfg, std::cout, std::cerr);
  } catch (const entrec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return entrec::exit_code::usage;
  } catch (const entrec::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return entrec::exit_code::usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return entrec::exit_code::validation_failed;
  }
}

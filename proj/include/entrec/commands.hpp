#pragma once

// Subcommand bodies. Each writes its report to `out`, diagnostics to `err`,
// and returns the process exit code.

#include <iosfwd>
#include <string>

#include "entrec/config.hpp"

namespace entrec {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int validation_failed = 1;
inline constexpr int usage = 2;
inline constexpr int io = 3;
}  // namespace exit_code

/// %.12g without locale influence.
std::string format_g12(double x);

/// CSV to cfg.out (or `out` when empty).
int run_sweep_command(const CliConfig& cfg, std::ostream& out, std::ostream& err);

int run_chsh_command(const CliConfig& cfg, std::ostream& out, std::ostream& err);

int run_tomo_command(const CliConfig& cfg, std::ostream& out, std::ostream& err);

int run_validate_command(const CliConfig& cfg, std::ostream& out, std::ostream& err,
                         const CharacteristicFn& characteristic = gaussian_characteristic);

/// State selected by cfg.scenario: a uses L1 as its plate length, bell is the
/// undisturbed pair.
DensityMatrix scenario_state(const CliConfig& cfg);

}  // namespace entrec

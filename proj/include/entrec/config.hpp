#pragma once

// Flat `key = value` run configuration for the command-line front end.

#include <cstdint>
#include <string>
#include <string_view>

#include "entrec/errors.hpp"
#include "entrec/scenarios.hpp"
#include "entrec/validation.hpp"

namespace entrec {

/// Bad key, value or range. `line` is 0 for command-line overrides.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, int line, const std::string& what);
  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

struct CliConfig {
  ExperimentConfig experiment;
  std::string scenario = "recovery";  // a | recovery | esd | bell (bell: chsh and tomo only)
  SweepRange range{0.0, 1000.0, 1.0};
  bool with_chsh = false;

  std::uint64_t pairs = 1000000;  // tomography pairs per projection
  int trials = 100;
  double jitter_deg = 0.0;
  std::uint64_t seed = 1;

  GateOptions gate;
  std::string out;  // empty: standard output
};

/// Parses `key = value` lines; `#` starts a comment. Unknown keys, malformed
/// numbers and out-of-range values throw ConfigError naming key and line.
CliConfig parse_config(std::string_view text);

/// Applies one `key = value` assignment on top of `cfg`.
void apply_setting(CliConfig& cfg, std::string_view key, std::string_view value, int line = 0);

}  // namespace entrec

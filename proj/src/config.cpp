#include "entrec/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>

namespace entrec {

namespace {

std::string where(int line) { return line > 0 ? "line " + std::to_string(line) : "command line"; }

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view v, int line) {
  double x = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(x))
    throw ConfigError(std::string(key), line, "malformed number '" + std::string(v) + "'");
  return x;
}

std::uint64_t to_u64(std::string_view key, std::string_view v, int line) {
  std::uint64_t x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ConfigError(std::string(key), line, "malformed integer '" + std::string(v) + "'");
  return x;
}

bool to_bool(std::string_view key, std::string_view v, int line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(std::string(key), line, "expected true or false, got '" + std::string(v) + "'");
}

void require(bool ok, std::string_view key, int line, const char* range) {
  if (!ok) throw ConfigError(std::string(key), line, std::string("value out of range ") + range);
}

int odd_grid_points(std::string_view key, std::string_view v, int line) {
  const auto n = to_u64(key, v, line);
  require(n >= 1025 && n % 2 == 1 && n < 1000000, key, line, "(odd, >= 1025)");
  return static_cast<int>(n);
}

using Setter = std::function<void(CliConfig&, std::string_view key, std::string_view value, int line)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table{
      {"lambda0_nm",
       [](CliConfig& c, auto k, auto v, int l) {
         const double x = to_double(k, v, l);
         require(x > 0.0, k, l, "(> 0)");
         c.experiment.lambda0 = x * 1e-9;
       }},
      {"delta_n",
       [](CliConfig& c, auto k, auto v, int l) {
         const double x = to_double(k, v, l);
         require(x > 0.0 && x < 1.0, k, l, "(0, 1)");
         c.experiment.delta_n = x;
       }},
      {"bandwidth_nm",
       [](CliConfig& c, auto k, auto v, int l) {
         const double x = to_double(k, v, l);
         require(x > 0.0, k, l, "(> 0)");
         c.experiment.bandwidth_nm = x;
       }},
      {"sigma_convention",
       [](CliConfig& c, auto k, auto v, int l) {
         const auto conv = parse_sigma_convention(v);
         if (!conv)
           throw ConfigError(std::string(k), l,
                             "expected bandwidth_as_sigma, fwhm_of_f, fwhm_of_intensity or direct_sigma");
         c.experiment.sigma_convention = *conv;
       }},
      {"sigma",
       [](CliConfig& c, auto k, auto v, int l) {
         const double x = to_double(k, v, l);
         require(x > 0.0, k, l, "(> 0)");
         c.experiment.sigma_direct = x;
       }},
      {"length_unit",
       [](CliConfig& c, auto k, auto v, int l) {
         const auto u = parse_length_unit(v);
         if (!u) throw ConfigError(std::string(k), l, "expected retardance or thickness");
         c.experiment.length_unit = *u;
       }},
      {"La",
       [](CliConfig& c, auto k, auto v, int l) {
         const double x = to_double(k, v, l);
         require(x >= 0.0, k, l, "(>= 0)");
         c.experiment.L_a = x;
       }},
      {"L1",
       [](CliConfig& c, auto k, auto v, int l) {
         const double x = to_double(k, v, l);
         require(x >= 0.0, k, l, "(>= 0)");
         c.experiment.L_1 = x;
       }},
      {"L2",
       [](CliConfig& c, auto k, auto v, int l) {
         const double x = to_double(k, v, l);
         require(x >= 0.0, k, l, "(>= 0)");
         c.experiment.L_2 = x;
       }},
      {"scenario",
       [](CliConfig& c, auto k, auto v, int l) {
         if (!parse_scenario(v) && v != "bell")
           throw ConfigError(std::string(k), l, "expected a, recovery, esd or bell");
         c.scenario = std::string(v);
       }},
      {"L2_start",
       [](CliConfig& c, auto k, auto v, int l) {
         const double x = to_double(k, v, l);
         require(x >= 0.0, k, l, "(>= 0)");
         c.range.start = x;
       }},
      {"L2_stop",
       [](CliConfig& c, auto k, auto v, int l) {
         const double x = to_double(k, v, l);
         require(x >= 0.0, k, l, "(>= 0)");
         c.range.stop = x;
       }},
      {"L2_step",
       [](CliConfig& c, auto k, auto v, int l) {
         const double x = to_double(k, v, l);
         require(x > 0.0, k, l, "(> 0)");
         c.range.step = x;
       }},
      {"with_chsh", [](CliConfig& c, auto k, auto v, int l) { c.with_chsh = to_bool(k, v, l); }},
      {"N",
       [](CliConfig& c, auto k, auto v, int l) {
         const auto x = to_u64(k, v, l);
         require(x > 0, k, l, "(> 0)");
         c.pairs = x;
       }},
      {"trials",
       [](CliConfig& c, auto k, auto v, int l) {
         const auto x = to_u64(k, v, l);
         require(x >= 2 && x <= 1000000, k, l, "(2 .. 1000000; the spread needs two trials)");
         c.trials = static_cast<int>(x);
       }},
      {"jitter_deg",
       [](CliConfig& c, auto k, auto v, int l) {
         const double x = to_double(k, v, l);
         require(x >= 0.0, k, l, "(>= 0)");
         c.jitter_deg = x;
       }},
      {"seed",
       [](CliConfig& c, auto k, auto v, int l) {
         c.seed = to_u64(k, v, l);
         c.gate.seed = c.seed;
       }},
      {"tol_characteristic",
       [](CliConfig& c, auto k, auto v, int l) {
         const double x = to_double(k, v, l);
         require(x > 0.0, k, l, "(> 0)");
         c.gate.tol_characteristic = x;
       }},
      {"tol_reduce",
       [](CliConfig& c, auto k, auto v, int l) {
         const double x = to_double(k, v, l);
         require(x > 0.0, k, l, "(> 0)");
         c.gate.tol_reduce = x;
       }},
      {"validate_tuples",
       [](CliConfig& c, auto k, auto v, int l) {
         const auto x = to_u64(k, v, l);
         require(x >= 1 && x <= 10000, k, l, "(1 .. 10000)");
         c.gate.tuples = static_cast<int>(x);
       }},
      {"quad_points",
       [](CliConfig& c, auto k, auto v, int l) { c.gate.characteristic_grid.points = odd_grid_points(k, v, l); }},
      {"reduce_points",
       [](CliConfig& c, auto k, auto v, int l) { c.gate.reduce_grid.points = odd_grid_points(k, v, l); }},
      {"quad_span",
       [](CliConfig& c, auto k, auto v, int l) {
         const double x = to_double(k, v, l);
         require(x >= 6.0, k, l, "(>= 6)");
         c.gate.characteristic_grid.span = x;
         c.gate.reduce_grid.span = x;
       }},
      {"out", [](CliConfig& c, auto, auto v, int) { c.out = std::string(v); }},
  };
  return table;
}

}  // namespace

ConfigError::ConfigError(std::string key, int line, const std::string& what)
    : Error(key + " (" + where(line) + "): " + what), key_(std::move(key)), line_(line) {}

void apply_setting(CliConfig& cfg, std::string_view key, std::string_view value, int line) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError(std::string(key), line, "unknown key");
  it->second(cfg, key, value, line);
}

CliConfig parse_config(std::string_view text) {
  CliConfig cfg;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(std::string(line), line_no, "expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("", line_no, "missing key");
    apply_setting(cfg, key, value, line_no);
  }
  return cfg;
}

}  // namespace entrec

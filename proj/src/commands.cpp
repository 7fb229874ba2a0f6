#include "entrec/commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "entrec/tomo.hpp"

namespace entrec {

namespace {

// Writes the finished report to cfg.out, or to `out` when no path is set.
int emit(const CliConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err) {
  if (cfg.out.empty()) {
    out << text;
    out.flush();
    return out ? exit_code::ok : exit_code::io;
  }
  std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
  if (!f) {
    err << "error: cannot open " << cfg.out << " for writing\n";
    return exit_code::io;
  }
  f << text;
  f.close();
  if (!f) {
    err << "error: write to " << cfg.out << " failed\n";
    return exit_code::io;
  }
  return exit_code::ok;
}

std::string cplx_str(cplx z) {
  std::string s = format_g12(z.real());
  s += z.imag() < 0.0 ? " - " : " + ";
  s += format_g12(std::abs(z.imag()));
  s += "i";
  return s;
}

void write_matrix(std::string& s, const DensityMatrix& rho) {
  for (std::size_t i = 0; i < 4; ++i) {
    s += "  ";
    for (std::size_t j = 0; j < 4; ++j) {
      s += "[" + cplx_str(rho(i, j)) + "]";
      if (j < 3) s += " ";
    }
    s += "\n";
  }
}

}  // namespace

std::string format_g12(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return ec == std::errc() ? std::string(buf, p) : std::string("nan");
}

DensityMatrix scenario_state(const CliConfig& cfg) {
  const auto& e = cfg.experiment;
  if (cfg.scenario == "bell") return DensityMatrix::bell_phi_plus();
  const auto id = parse_scenario(cfg.scenario);
  if (!id) throw PreconditionError("unknown scenario " + cfg.scenario);
  switch (*id) {
    case ScenarioId::a: return scenario_a(e, e.L_1).rho;
    case ScenarioId::recovery: return scenario_recovery(e, e.L_1, e.L_2).rho;
    case ScenarioId::esd: return scenario_esd(e, e.L_a, e.L_1, e.L_2).rho;
  }
  throw PreconditionError("unknown scenario " + cfg.scenario);
}

int run_sweep_command(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto id = parse_scenario(cfg.scenario);
  if (!id) {
    err << "error: scenario '" << cfg.scenario << "' cannot be swept (use a, recovery or esd)\n";
    return exit_code::usage;
  }
  const SweepResult res = sweep(cfg.experiment, *id, cfg.range, cfg.with_chsh);

  std::string csv = cfg.with_chsh ? "L2_lambda0,concurrence,success_prob,S_max\n"
                                  : "L2_lambda0,concurrence,success_prob\n";
  for (const auto& row : res.rows) {
    if (row.error) err << "warning: L2=" << format_g12(row.L2) << ": " << *row.error << "\n";
    const double nan = std::nan("");
    csv += format_g12(row.L2);
    csv += ",";
    csv += format_g12(row.error ? nan : row.concurrence);
    csv += ",";
    csv += format_g12(row.error ? nan : row.success_prob);
    if (cfg.with_chsh) {
      csv += ",";
      csv += format_g12(row.s_max && !row.error ? *row.s_max : nan);
    }
    csv += "\n";
  }
  return emit(cfg, csv, out, err);
}

int run_chsh_command(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const DensityMatrix rho = scenario_state(cfg);
  const ChshResult best = maximize_chsh_linear(rho);
  std::string s;
  s += "scenario: " + cfg.scenario + "\n";
  s += "rho:\n";
  write_matrix(s, rho);
  s += "concurrence: " + format_g12(concurrence(rho)) + "\n";
  s += "angles_deg: theta1=" + format_g12(best.setting.a1) + " theta1'=" + format_g12(best.setting.a1p) +
       " theta2=" + format_g12(best.setting.b2) + " theta2'=" + format_g12(best.setting.b2p) + "\n";
  s += "S_max: " + format_g12(best.s_max) + "\n";
  s += "S_bound: " + format_g12(horodecki_Smax(rho)) + "\n";
  return emit(cfg, s, out, err);
}

int run_tomo_command(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const DensityMatrix rho = scenario_state(cfg);
  const auto ps = tomo::ProjectionSet::standard();
  const auto mc = tomo::mc_error(rho, ps, cfg.pairs, cfg.trials, cfg.seed, cfg.jitter_deg, true);
  std::string s;
  s += "scenario: " + cfg.scenario + "\n";
  s += "N: " + std::to_string(cfg.pairs) + " trials: " + std::to_string(cfg.trials) +
       " seed: " + std::to_string(cfg.seed) + " jitter_deg: " + format_g12(cfg.jitter_deg) + "\n";
  s += "concurrence: " + format_g12(mc.mean_concurrence) + " +- " + format_g12(mc.std_concurrence) + "\n";
  s += "S: " + format_g12(mc.mean_s) + " +- " + format_g12(mc.std_s) + "\n";
  return emit(cfg, s, out, err);
}

int run_validate_command(const CliConfig& cfg, std::ostream& out, std::ostream& err,
                         const CharacteristicFn& characteristic) {
  const GateReport rep = run_oracle_gate(cfg.experiment, cfg.gate, characteristic);
  std::string s;
  for (const auto& c : rep.checks) {
    s += c.passed ? "ok   " : "FAIL ";
    s += c.name + " max_error=" + format_g12(c.max_error) + " tol=" + format_g12(c.tolerance);
    if (!c.detail.empty()) s += " (" + c.detail + ")";
    s += "\n";
  }
  const bool ok = rep.passed();
  s += ok ? "validate: all checks passed\n" : "validate: FAILED\n";
  if (!ok)
    for (const auto& c : rep.checks)
      if (!c.passed) err << "check failed: " << c.name << "\n";
  const int rc = emit(cfg, s, out, err);
  if (rc != exit_code::ok) return rc;
  return ok ? exit_code::ok : exit_code::validation_failed;
}

}  // namespace entrec

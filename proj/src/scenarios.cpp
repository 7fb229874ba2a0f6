#include "entrec/scenarios.hpp"

#include <cmath>
#include <numbers>

#include "entrec/errors.hpp"

namespace entrec {

std::string_view to_string(SigmaConvention c) {
  switch (c) {
    case SigmaConvention::bandwidth_as_sigma: return "bandwidth_as_sigma";
    case SigmaConvention::fwhm_of_f: return "fwhm_of_f";
    case SigmaConvention::fwhm_of_intensity: return "fwhm_of_intensity";
    case SigmaConvention::direct_sigma: return "direct_sigma";
  }
  return "?";
}

std::string_view to_string(LengthUnit u) {
  return u == LengthUnit::retardance ? "retardance" : "thickness";
}

std::optional<SigmaConvention> parse_sigma_convention(std::string_view s) {
  for (auto c : {SigmaConvention::bandwidth_as_sigma, SigmaConvention::fwhm_of_f,
                 SigmaConvention::fwhm_of_intensity, SigmaConvention::direct_sigma})
    if (s == to_string(c)) return c;
  return std::nullopt;
}

std::optional<LengthUnit> parse_length_unit(std::string_view s) {
  for (auto u : {LengthUnit::retardance, LengthUnit::thickness})
    if (s == to_string(u)) return u;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) throw PreconditionError("lambda0 must be > 0");
  if (!(delta_n > 0.0 && delta_n < 1.0)) throw PreconditionError("delta_n must be in (0, 1)");
  if (!(bandwidth_nm > 0.0) || !std::isfinite(bandwidth_nm)) throw PreconditionError("bandwidth_nm must be > 0");
  if (sigma_convention == SigmaConvention::direct_sigma && !(sigma_direct > 0.0))
    throw PreconditionError("sigma must be > 0 for direct_sigma");
  if (!(L_a >= 0.0)) throw PreconditionError("La must be >= 0");
  if (!(L_1 >= 0.0)) throw PreconditionError("L1 must be >= 0");
  if (!(L_2 >= 0.0)) throw PreconditionError("L2 must be >= 0");
}

Spectrum make_spectrum(const ExperimentConfig& cfg) {
  cfg.validate();
  const double omega0 = 2.0 * std::numbers::pi * kSpeedOfLight / cfg.lambda0;
  const double dw = 2.0 * std::numbers::pi * kSpeedOfLight * (cfg.bandwidth_nm * 1e-9) / (cfg.lambda0 * cfg.lambda0);
  switch (cfg.sigma_convention) {
    case SigmaConvention::bandwidth_as_sigma: return Spectrum(omega0, dw);
    case SigmaConvention::fwhm_of_f: return Spectrum(omega0, dw / std::sqrt(std::numbers::ln2));
    case SigmaConvention::fwhm_of_intensity: return Spectrum(omega0, dw * std::sqrt(2.0 / std::numbers::ln2));
    case SigmaConvention::direct_sigma: return Spectrum(omega0, cfg.sigma_direct);
  }
  throw PreconditionError("unknown sigma convention");
}

namespace {

double physical_thickness(const ExperimentConfig& cfg, double L) {
  return cfg.length_unit == LengthUnit::retardance ? L / cfg.delta_n : L;
}

}  // namespace

double plate_delay(const ExperimentConfig& cfg, double L) {
  return physical_thickness(cfg, L) * cfg.lambda0 * cfg.delta_n / kSpeedOfLight;
}

QuartzPlate quartz(const ExperimentConfig& cfg, Arm arm, double L) {
  return QuartzPlate{arm, physical_thickness(cfg, L), cfg.delta_n, cfg.lambda0};
}

cplx decoherence_parameter(const ExperimentConfig& cfg, double L) {
  return gaussian_characteristic(plate_delay(cfg, L), make_spectrum(cfg));
}

ScenarioPoint scenario_a(const ExperimentConfig& cfg, double L) {
  const Spectrum sp = make_spectrum(cfg);
  const std::vector<Element> pipeline{quartz(cfg, Arm::b, L)};
  const auto red = reduce(propagate(bell_state(), pipeline), sp, sp);
  return {red.rho, concurrence(red.rho), red.success_prob};
}

std::vector<Element> recovery_apparatus(const ExperimentConfig& cfg, double L1, double L2) {
  return {
      quartz(cfg, Arm::b, L1),
      BeamDisplacerSplit{Arm::b},
      MapPlate{Arm::b, jones::hadamard()},
      quartz(cfg, Arm::b, L2),
      MapPlate{Arm::b, jones::plus_minus_map()},
      BeamDisplacerMerge{Arm::b, MergePorts::crossed},
      MapPlate{Arm::b, jones::bit_flip()},
  };
}

cplx kprime_closed_form(const ExperimentConfig& cfg, double L1, double L2) {
  const Spectrum sp = make_spectrum(cfg);
  const double a1 = plate_delay(cfg, L1);
  const double a2 = plate_delay(cfg, L2);
  auto k = [&](double a) { return gaussian_characteristic(a, sp); };
  return (2.0 * k(a1) + k(a1 + a2) + k(a1 - a2)) / (2.0 + 2.0 * k(a2).real());
}

ScenarioPoint scenario_recovery(const ExperimentConfig& cfg, double L1, double L2) {
  const Spectrum sp = make_spectrum(cfg);
  const auto pipeline = recovery_apparatus(cfg, L1, L2);
  const auto red = reduce(propagate(bell_state(), pipeline), sp, sp);
  return {red.rho, concurrence(red.rho), red.success_prob};
}

std::vector<Element> partial_input_preparation(const ExperimentConfig& cfg, double La) {
  return {MapPlate{Arm::a, jones::hadamard()}, quartz(cfg, Arm::a, La)};
}

DensityMatrix partial_input(const ExperimentConfig& cfg, double La) {
  const Spectrum sp = make_spectrum(cfg);
  const auto pipeline = partial_input_preparation(cfg, La);
  return reduce(propagate(bell_state(), pipeline), sp, sp).rho;
}

EsdPoint scenario_esd(const ExperimentConfig& cfg, double La, double L1, double L2) {
  const Spectrum sp = make_spectrum(cfg);
  auto pipeline = partial_input_preparation(cfg, La);
  const auto apparatus = recovery_apparatus(cfg, L1, L2);
  pipeline.insert(pipeline.end(), apparatus.begin(), apparatus.end());
  const auto red = reduce(propagate(bell_state(), pipeline), sp, sp);

  const double ka = std::abs(decoherence_parameter(cfg, La));
  const double kb = std::abs(kprime_closed_form(cfg, L1, L2));
  const double formula = std::max(0.0, (ka + kb + ka * kb - 1.0) / 2.0);
  return {red.rho, concurrence(red.rho), formula, red.success_prob};
}

std::string_view to_string(ScenarioId id) {
  switch (id) {
    case ScenarioId::a: return "a";
    case ScenarioId::recovery: return "recovery";
    case ScenarioId::esd: return "esd";
  }
  return "?";
}

std::optional<ScenarioId> parse_scenario(std::string_view s) {
  for (auto id : {ScenarioId::a, ScenarioId::recovery, ScenarioId::esd})
    if (s == to_string(id)) return id;
  return std::nullopt;
}

std::vector<double> SweepRange::samples() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw PreconditionError("sweep step must be > 0");
  std::vector<double> out;
  if (stop < start) return out;
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

SweepRow sweep_row(const ExperimentConfig& cfg, ScenarioId id, double L, bool with_chsh) {
  SweepRow row;
  row.L2 = L;
  try {
    std::optional<DensityMatrix> rho;
    switch (id) {
      case ScenarioId::a: {
        auto p = scenario_a(cfg, L);
        row.concurrence = p.concurrence;
        row.success_prob = p.success_prob;
        rho = p.rho;
        break;
      }
      case ScenarioId::recovery: {
        auto p = scenario_recovery(cfg, cfg.L_1, L);
        row.concurrence = p.concurrence;
        row.success_prob = p.success_prob;
        rho = p.rho;
        break;
      }
      case ScenarioId::esd: {
        auto p = scenario_esd(cfg, cfg.L_a, cfg.L_1, L);
        row.concurrence = p.concurrence;
        row.success_prob = p.success_prob;
        rho = p.rho;
        break;
      }
    }
    if (with_chsh) row.s_max = maximize_chsh_linear(*rho).s_max;
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

SweepResult sweep_serial(const ExperimentConfig& cfg, ScenarioId id, const SweepRange& range, bool with_chsh) {
  cfg.validate();
  const auto xs = range.samples();
  SweepResult res{id, cfg, {}};
  res.rows.reserve(xs.size());
  for (const double x : xs) res.rows.push_back(sweep_row(cfg, id, x, with_chsh));
  return res;
}

SweepResult sweep(const ExperimentConfig& cfg, ScenarioId id, const SweepRange& range, bool with_chsh) {
  cfg.validate();
  const auto xs = range.samples();
  SweepResult res{id, cfg, std::vector<SweepRow>(xs.size())};
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) res.rows[i] = sweep_row(cfg, id, xs[i], with_chsh);
  return res;
}

}  // namespace entrec

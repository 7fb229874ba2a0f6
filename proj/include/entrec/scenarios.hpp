#pragma once

// The experiment configurations: a dephased Bell pair (scenario a), the
// measure-and-erase recovery apparatus on arm b, and the partially entangled
// input whose entanglement dies and is reborn.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entrec/optics.hpp"
#include "entrec/states.hpp"

namespace entrec {

/// How the filter bandwidth maps to the Gaussian width sigma of f(w).
enum class SigmaConvention {
  bandwidth_as_sigma,  // sigma = 2 pi c dl / l0^2, the filter bandwidth itself
  fwhm_of_f,           // bandwidth is the FWHM of f: sigma = dw / sqrt(ln 2)
  fwhm_of_intensity,   // bandwidth is the FWHM of f^2: sigma = dw sqrt(2 / ln 2)
  direct_sigma,        // sigma given explicitly (sigma_direct, rad/s)
};

/// How plate lengths "L lambda0" are read.
enum class LengthUnit {
  retardance,  // L lambda0 is the optical path difference: delay = L lambda0 / c
  thickness,   // L lambda0 is the physical thickness: delay = L lambda0 delta_n / c
};

std::string_view to_string(SigmaConvention c);
std::string_view to_string(LengthUnit u);
std::optional<SigmaConvention> parse_sigma_convention(std::string_view s);
std::optional<LengthUnit> parse_length_unit(std::string_view s);

struct ExperimentConfig {
  double lambda0 = kDefaultLambda0;  // m
  double delta_n = 0.01;
  double bandwidth_nm = 3.0;
  SigmaConvention sigma_convention = SigmaConvention::bandwidth_as_sigma;
  double sigma_direct = 0.0;  // rad/s, direct_sigma only
  LengthUnit length_unit = LengthUnit::retardance;
  double L_a = 0.0;  // lambda0 units
  double L_1 = 0.0;
  double L_2 = 0.0;

  /// Throws PreconditionError naming the offending field.
  void validate() const;
};

Spectrum make_spectrum(const ExperimentConfig& cfg);

/// Birefringent delay (s) of a plate of length L (lambda0 units).
double plate_delay(const ExperimentConfig& cfg, double L);

/// Quartz element in `arm` whose delay is plate_delay(cfg, L).
QuartzPlate quartz(const ExperimentConfig& cfg, Arm arm, double L);

/// k(alpha) for the configured spectrum.
cplx decoherence_parameter(const ExperimentConfig& cfg, double L);

struct ScenarioPoint {
  DensityMatrix rho;
  double concurrence;
  double success_prob;
};

/// Bell pair, quartz of length L in arm b.
ScenarioPoint scenario_a(const ExperimentConfig& cfg, double L);

/// Q1, BD1, HWP1 (Hadamard), Q2, HWP2 (|H> -> |+>, |V> -> -|->), BD2, HWP3
/// (bit flip), all in arm b.
std::vector<Element> recovery_apparatus(const ExperimentConfig& cfg, double L1, double L2);

/// k_b' = [2 k(a1) + k(a1 + a2) + k(a1 - a2)] / [2 + 2 Re k(a2)].
cplx kprime_closed_form(const ExperimentConfig& cfg, double L1, double L2);

ScenarioPoint scenario_recovery(const ExperimentConfig& cfg, double L1, double L2);

/// Hadamard then quartz of length La on arm a of the Bell pair.
std::vector<Element> partial_input_preparation(const ExperimentConfig& cfg, double La);
DensityMatrix partial_input(const ExperimentConfig& cfg, double La);

struct EsdPoint {
  DensityMatrix rho;
  double concurrence;        // Wootters, on rho
  double formula_concurrence;  // max{0, (|k_a| + |k_b'| + |k_a||k_b'| - 1)/2}
  double success_prob;
};

EsdPoint scenario_esd(const ExperimentConfig& cfg, double La, double L1, double L2);

enum class ScenarioId { a, recovery, esd };
std::string_view to_string(ScenarioId id);
std::optional<ScenarioId> parse_scenario(std::string_view s);

/// Inclusive sample grid start, start + step, ... <= stop (1e-9 step slack).
struct SweepRange {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> samples() const;
};

struct SweepRow {
  double L2 = 0.0;
  double concurrence = 0.0;
  double success_prob = 0.0;
  std::optional<double> s_max;
  std::optional<std::string> error;  // set when the row failed
};

struct SweepResult {
  ScenarioId scenario = ScenarioId::a;
  ExperimentConfig config;
  std::vector<SweepRow> rows;
};

/// One row per sample of the swept length. For scenario a the swept value is
/// the single plate length; for recovery and esd it is L2 with L_1 (and L_a)
/// taken from the config. Rows run in parallel; order and values match
/// sweep_serial exactly.
SweepResult sweep(const ExperimentConfig& cfg, ScenarioId id, const SweepRange& range, bool with_chsh);
SweepResult sweep_serial(const ExperimentConfig& cfg, ScenarioId id, const SweepRange& range, bool with_chsh);

/// Evaluates one sweep row; errors are captured in the row.
SweepRow sweep_row(const ExperimentConfig& cfg, ScenarioId id, double L, bool with_chsh);

}  // namespace entrec

#pragma once

// Closed form vs. quadrature checks behind `entrec validate`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "entrec/oracle.hpp"
#include "entrec/scenarios.hpp"

namespace entrec {

using CharacteristicFn = std::function<cplx(double, const Spectrum&)>;

struct GateOptions {
  int characteristic_points = 200;  // delay*sigma samples on [0, 10]
  int tuples = 20;                  // random length tuples per pipeline
  std::uint64_t seed = 1;
  oracle::QuadratureGrid characteristic_grid{8.0, 8193};
  oracle::QuadratureGrid reduce_grid{8.0, 2049};
  double tol_characteristic = 1e-9;  // relative
  double tol_reduce = 1e-9;          // entrywise absolute
};

struct GateCheck {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct GateReport {
  std::vector<GateCheck> checks;
  bool passed() const;
};

/// The scenario pipelines the reduce check covers.
enum class GatePipeline { dephasing, recovery, partial_input, esd };
std::string_view to_string(GatePipeline p);

/// State right before reduction for a pipeline at lengths (La, L1, L2).
BiphotonState gate_state(const ExperimentConfig& cfg, GatePipeline p, double La, double L1, double L2);

/// Characteristic-function check with an injectable closed form, followed by
/// closed-form reduce vs. numeric_reduce on every pipeline at random lengths.
/// Lengths are drawn uniformly up to the largest value the reduce grid resolves
/// (capped at 500 lambda0).
GateReport run_oracle_gate(const ExperimentConfig& cfg, const GateOptions& opt,
                           const CharacteristicFn& characteristic = gaussian_characteristic);

}  // namespace entrec

#include "entrec/validation.hpp"

#include <algorithm>
#include <cmath>

#include "entrec/errors.hpp"
#include "entrec/tomo.hpp"

namespace entrec {

bool GateReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::string_view to_string(GatePipeline p) {
  switch (p) {
    case GatePipeline::dephasing: return "dephasing";
    case GatePipeline::recovery: return "recovery";
    case GatePipeline::partial_input: return "partial_input";
    case GatePipeline::esd: return "esd";
  }
  return "?";
}

BiphotonState gate_state(const ExperimentConfig& cfg, GatePipeline p, double La, double L1, double L2) {
  std::vector<Element> pipeline;
  switch (p) {
    case GatePipeline::dephasing:
      pipeline.push_back(quartz(cfg, Arm::b, L1));
      break;
    case GatePipeline::recovery:
      pipeline = recovery_apparatus(cfg, L1, L2);
      break;
    case GatePipeline::partial_input:
      pipeline = partial_input_preparation(cfg, La);
      break;
    case GatePipeline::esd: {
      pipeline = partial_input_preparation(cfg, La);
      const auto app = recovery_apparatus(cfg, L1, L2);
      pipeline.insert(pipeline.end(), app.begin(), app.end());
      break;
    }
  }
  return propagate(bell_state(), pipeline);
}

GateReport run_oracle_gate(const ExperimentConfig& cfg, const GateOptions& opt, const CharacteristicFn& characteristic) {
  const Spectrum sp = make_spectrum(cfg);
  GateReport report;

  {
    GateCheck c{"characteristic", 0.0, opt.tol_characteristic, false, {}};
    try {
      for (int i = 0; i < opt.characteristic_points; ++i) {
        const double x = 10.0 * i / (opt.characteristic_points - 1);  // delay * sigma
        const double dalpha = x / sp.sigma();
        const cplx ref = oracle::numeric_characteristic(dalpha, sp, opt.characteristic_grid);
        const cplx got = characteristic(dalpha, sp);
        c.max_error = std::max(c.max_error, std::abs(got - ref) / std::abs(ref));
      }
      c.passed = c.max_error < c.tolerance;
    } catch (const Error& e) {
      c.detail = e.what();
    }
    report.checks.push_back(c);
  }

  // Keep every pairwise delay difference (at most La, or L1 + L2) inside the grid's resolution.
  const double per_unit = plate_delay(cfg, 1.0) * sp.sigma();
  const double max_len = std::min(500.0, 0.45 * oracle::max_resolved_delay_sigma(opt.reduce_grid) / per_unit);
  tomo::Sampler rng(opt.seed);
  for (const auto pipe : {GatePipeline::dephasing, GatePipeline::recovery, GatePipeline::partial_input,
                          GatePipeline::esd}) {
    GateCheck c{"reduce/" + std::string(to_string(pipe)), 0.0, opt.tol_reduce, false, {}};
    try {
      for (int t = 0; t < opt.tuples; ++t) {
        const double La = max_len * rng.uniform();
        const double L1 = max_len * rng.uniform();
        const double L2 = max_len * rng.uniform();
        const BiphotonState s = gate_state(cfg, pipe, La, L1, L2);
        const Reduced closed = reduce(s, sp, sp);
        const Reduced numeric = oracle::numeric_reduce(s, sp, sp, opt.reduce_grid);
        double err = std::abs(closed.success_prob - numeric.success_prob);
        for (std::size_t i = 0; i < 16; ++i)
          err = std::max(err, std::abs(closed.rho.matrix().e[i] - numeric.rho.matrix().e[i]));
        c.max_error = std::max(c.max_error, err);
      }
      c.passed = c.max_error < c.tolerance;
    } catch (const Error& e) {
      c.detail = e.what();
    }
    report.checks.push_back(c);
  }
  return report;
}

}  // namespace entrec

#pragma once

// Simulated two-photon polarization tomography: Poissonian coincidence counts
// with optional wave-plate angle jitter, linear inversion, Monte-Carlo error bars.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "entrec/states.hpp"

namespace entrec::tomo {

/// Single-photon analyzer state cos(theta)|H> + e^{i phi} sin(theta)|V>,
/// phi = 90 degrees when `circular` is set.
struct Analyzer {
  double theta_deg = 0.0;
  bool circular = false;
};

struct Projection {
  Analyzer a;
  Analyzer b;
};

/// Sixteen product projections whose outer products span the Hermitian 4x4
/// matrices. Construction checks the measurement matrix is well conditioned.
class ProjectionSet {
 public:
  /// {H, V, D, R} x {H, V, D, R}.
  static ProjectionSet standard();
  /// Throws PreconditionError on a singular or ill-conditioned set.
  explicit ProjectionSet(std::vector<Projection> projections);

  std::span<const Projection> projections() const { return projections_; }
  double condition_number() const { return cond_; }

 private:
  std::vector<Projection> projections_;
  double cond_ = 0.0;
};

/// Probability tr(rho Pi) for one projection.
double projection_probability(const DensityMatrix& rho, const Projection& p);

struct CountRecord {
  std::vector<double> expected;        // N tr(rho Pi_k), with jitter applied
  std::vector<std::uint64_t> counts;   // sampled
  std::uint64_t pairs = 0;             // N
  std::uint64_t seed = 0;
  double angle_jitter_deg = 0.0;
};

/// Deterministic per seed. Throws PreconditionError unless N > 0 and jitter >= 0.
CountRecord simulate_counts(const DensityMatrix& rho, const ProjectionSet& ps, std::uint64_t pairs,
                            std::uint64_t seed, double angle_jitter_deg);

struct Reconstruction {
  DensityMatrix rho;
  bool projected = false;  // PSD projection was needed
};

/// Linear inversion of the relative frequencies (one per projection, in order).
Reconstruction linear_reconstruct(std::span<const double> frequencies, const ProjectionSet& ps);
Reconstruction linear_reconstruct(const CountRecord& cr, const ProjectionSet& ps);

struct McSummary {
  double mean_concurrence = 0.0;
  double std_concurrence = 0.0;
  double mean_s = 0.0;
  double std_s = 0.0;
};

/// Repeats simulate + reconstruct with per-trial seeds derived from `seed`.
/// Sample standard deviations. Throws PreconditionError if trials < 2.
McSummary mc_error(const DensityMatrix& rho, const ProjectionSet& ps, std::uint64_t pairs, int trials,
                   std::uint64_t seed, double angle_jitter_deg, bool with_chsh = true);
McSummary mc_error_serial(const DensityMatrix& rho, const ProjectionSet& ps, std::uint64_t pairs, int trials,
                          std::uint64_t seed, double angle_jitter_deg, bool with_chsh = true);

/// Seed for trial `index` of a run seeded with `seed` (splitmix64 of both).
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

/// Portable sampling on top of std::mt19937_64 (whose output sequence is fixed
/// by the standard): 53-bit uniforms, Box-Muller normals, Poisson by inversion
/// below mean 30 and rounded normal approximation above.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed);
  double uniform();  // [0, 1)
  double normal();
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

}  // namespace entrec::tomo

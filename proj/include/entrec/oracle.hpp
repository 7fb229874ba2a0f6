#pragma once

// Brute-force frequency quadrature. Independent of the closed-form Gaussian
// characteristic function; used to validate it and the closed-form reduce.

#include "entrec/optics.hpp"

namespace entrec::oracle {

/// Composite trapezoid grid on w0 +- span * sigma.
struct QuadratureGrid {
  double span = 8.0;
  int points = 8193;

  /// Throws PreconditionError unless points >= 1025, odd, and span >= 6.
  void validate() const;
  /// Node spacing in units of sigma.
  double step_in_sigma() const { return 2.0 * span / (points - 1); }
};

/// Largest |delay| * sigma the grid resolves: |dalpha| sigma span / points <= 0.1.
double max_resolved_delay_sigma(const QuadratureGrid& g);

/// Trapezoid estimate of the integral of f(w) exp(i dalpha w).
/// Throws ResolutionError if the oscillation is under-resolved.
cplx numeric_characteristic(double dalpha, const Spectrum& sp, const QuadratureGrid& g);

/// Tensor-product trapezoid over (w_a, w_b) of psi(w_a, w_b) psi(w_a, w_b)^dagger
/// weighted by f_a f_b, where psi collects the frequency-resolved amplitudes of
/// every term. OpenMP-parallel over w_a rows; bit-identical to the serial version.
Reduced numeric_reduce(const BiphotonState& s, const Spectrum& sp_a, const Spectrum& sp_b,
                       const QuadratureGrid& g);
Reduced numeric_reduce_serial(const BiphotonState& s, const Spectrum& sp_a, const Spectrum& sp_b,
                              const QuadratureGrid& g);

}  // namespace entrec::oracle

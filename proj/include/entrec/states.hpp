#pragma once

#include "entrec/qmath.hpp"

namespace entrec {

/// Two-qubit density operator in the {HH, HV, VH, VV} basis.
///
/// Construction validates Hermiticity (max deviation 1e-10), unit trace
/// (1e-10) and positivity (smallest eigenvalue above -1e-9); a violation
/// throws PreconditionError.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kPsdTol = 1e-9;

  explicit DensityMatrix(const ComplexMatrix4& m);

  /// Projector onto a normalized (or normalizable) pure state.
  static DensityMatrix pure(const std::array<cplx, 4>& psi);
  static DensityMatrix maximally_mixed();
  /// (|HH> + |VV>)/sqrt(2)
  static DensityMatrix bell_phi_plus();

  const ComplexMatrix4& matrix() const { return m_; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  ComplexMatrix4 m_;
};

/// Linear-polarizer angles (degrees) for a CHSH test, reduced to (-90, 90].
struct ChshSetting {
  double a1 = 0.0;   // theta_1, arm a
  double a1p = 0.0;  // theta_1'
  double b2 = 0.0;   // theta_2, arm b
  double b2p = 0.0;  // theta_2'

  ChshSetting() = default;
  ChshSetting(double a1, double a1p, double b2, double b2p);
};

/// Maps an angle in degrees to (-90, 90].
double reduce_angle(double deg);

/// Wootters concurrence from the spectrum of rho (sy x sy) rho* (sy x sy).
///
/// Eigenvalues are real and nonnegative in exact arithmetic. Values within the
/// solver's backward-error floor of zero, or negative by less than 1e-10, are
/// taken as zero; anything more negative throws PreconditionError.
double concurrence(const DensityMatrix& rho);

/// <theta1 theta2| rho |theta1 theta2> with |theta> = cos(theta)|H> + sin(theta)|V>.
double coincidence_prob(const DensityMatrix& rho, double theta1_deg, double theta2_deg);

/// Normalized correlation from the four coincidence probabilities at
/// (theta, theta + 90) on each side. Throws DegenerateStateError when their
/// sum is below 1e-12.
double correlation_E(const DensityMatrix& rho, double theta1_deg, double theta2_deg);

double chsh_S(const DensityMatrix& rho, const ChshSetting& s);

struct ChshResult {
  ChshSetting setting;
  double s_max = 0.0;
};

/// Maximum of chsh_S over linear-polarizer settings: exhaustive 5 degree grid,
/// then coordinate descent down to 0.01 degree steps. Deterministic.
ChshResult maximize_chsh_linear(const DensityMatrix& rho);

/// 2 sqrt(u1 + u2) from the two largest eigenvalues of T^T T,
/// T_ij = Tr(rho sigma_i x sigma_j). Upper bound for any projective CHSH test.
double horodecki_Smax(const DensityMatrix& rho);

}  // namespace entrec

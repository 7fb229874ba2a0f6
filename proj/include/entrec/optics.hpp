#pragma once

// Frequency-resolved biphoton states and the optical elements acting on them.
//
// A state is a finite sum of terms amp * |pol_a pol_b>|path_a path_b> times
// exp(i delay_a w_a) exp(i delay_b w_b): every birefringent plate only adds a
// frequency-linear phase to the slow (V) ray, so the state before spectral
// integration is represented exactly by the accumulated delay per photon.

#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "entrec/qmath.hpp"
#include "entrec/states.hpp"

namespace entrec {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kDefaultLambda0 = 800e-9;     // m

enum class Arm { a, b };
enum class Pol { H, V };
enum class Path { I, II };

/// Gaussian spectral profile f(w) = 2/(sqrt(pi) sigma) exp(-4 (w - w0)^2 / sigma^2).
class Spectrum {
 public:
  /// Throws PreconditionError unless omega0 > 0 and sigma > 0 (both rad/s).
  Spectrum(double omega0, double sigma);

  double omega0() const { return omega0_; }
  double sigma() const { return sigma_; }
  double density(double omega) const;

 private:
  double omega0_;
  double sigma_;
};

struct Term {
  cplx amp;
  Pol pol_a = Pol::H;
  Pol pol_b = Pol::H;
  Path path_a = Path::I;
  Path path_b = Path::I;
  double delay_a = 0.0;  // s
  double delay_b = 0.0;  // s
};

class BiphotonState {
 public:
  BiphotonState() = default;
  /// Terms are merged by key, pruned below 1e-15 and sorted.
  explicit BiphotonState(std::vector<Term> terms);

  std::span<const Term> terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  /// Sum of |amp|^2; equals the success probability only once frequencies are
  /// integrated (see reduce).
  double weight() const;

 private:
  std::vector<Term> terms_;
};

/// True when both states have the same keys (delays compared to `delay_rtol`
/// relative) and amplitudes within `amp_tol`.
bool approx_equal(const BiphotonState& x, const BiphotonState& y, double amp_tol = 1e-12,
                  double delay_rtol = 1e-12);

BiphotonState bell_state();

/// Single-photon polarization map, acting as j * (c_H, c_V)^T.
using JonesMatrix = ComplexMatrix2;

namespace jones {
JonesMatrix hadamard();
JonesMatrix bit_flip();
/// |H> -> |+>, |V> -> -|->
JonesMatrix plus_minus_map();
/// Half-wave plate with fast axis at `deg` from horizontal.
JonesMatrix half_wave_plate(double deg);
}  // namespace jones

/// Which (polarization, path) pairs a recombining beam displacer sends to the
/// bright port. `direct` inverts the split (H in I, V in II); `crossed` passes
/// V from path I and H from path II, as after a polarization-swapping stage
/// between the displacers.
enum class MergePorts { direct, crossed };

/// Quartz plate with optic axis horizontal: the V component of `arm` gains
/// delay thickness * lambda0 * delta_n / c. Thickness in units of lambda0.
BiphotonState apply_quartz(const BiphotonState& s, Arm arm, double thickness, double delta_n,
                           double lambda0 = kDefaultLambda0);
BiphotonState apply_jones(const BiphotonState& s, Arm arm, const JonesMatrix& j);
/// Sends V to path II. Throws PreconditionError if the arm is already split.
BiphotonState apply_bd_split(const BiphotonState& s, Arm arm);
/// Recombines the arm into path I, discarding dark-port amplitudes.
BiphotonState apply_bd_merge(const BiphotonState& s, Arm arm, MergePorts ports = MergePorts::direct);

struct QuartzPlate {
  Arm arm;
  double thickness;  // lambda0 units
  double delta_n;
  double lambda0 = kDefaultLambda0;
};
struct HalfWavePlate {
  Arm arm;
  double axis_deg;
};
struct MapPlate {
  Arm arm;
  JonesMatrix map;
};
struct BeamDisplacerSplit {
  Arm arm;
};
struct BeamDisplacerMerge {
  Arm arm;
  MergePorts ports = MergePorts::direct;
};

using Element = std::variant<QuartzPlate, HalfWavePlate, MapPlate, BeamDisplacerSplit, BeamDisplacerMerge>;

/// Validates element parameters (thickness >= 0, 0 < delta_n < 1, finite maps).
void validate(const Element& e);
BiphotonState apply(const BiphotonState& s, const Element& e);
BiphotonState propagate(BiphotonState s, std::span<const Element> pipeline);

/// Characteristic function of the Gaussian spectrum at delay difference `dalpha`:
/// exp(-dalpha^2 sigma^2 / 16) exp(i dalpha w0).
cplx gaussian_characteristic(double dalpha, const Spectrum& sp);

struct Reduced {
  DensityMatrix rho;
  double success_prob;
};

/// Integrates each photon's frequency independently and traces out nothing
/// else: rho~[p, q] = sum amp_m conj(amp_n) k_a(da_m - da_n) k_b(db_m - db_n)
/// over term pairs with polarizations p, q. rho is rho~ normalized by its trace,
/// which is returned as the post-selection success probability.
///
/// Throws PreconditionError if any term is still in path II and
/// PostSelectionError if the trace is below 1e-14.
Reduced reduce(const BiphotonState& s, const Spectrum& sp_a, const Spectrum& sp_b);

/// False while any term of either arm is still in path II.
bool fully_recombined(const BiphotonState& s);

/// Basis index of (pol_a, pol_b) in {HH, HV, VH, VV}.
inline std::size_t basis_index(Pol a, Pol b) {
  return 2 * static_cast<std::size_t>(a) + static_cast<std::size_t>(b);
}

}  // namespace entrec

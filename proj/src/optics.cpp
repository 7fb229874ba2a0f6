#include "entrec/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "entrec/errors.hpp"

namespace entrec {

namespace {

constexpr double kPruneTol = 1e-15;

Pol& pol_of(Term& t, Arm arm) { return arm == Arm::a ? t.pol_a : t.pol_b; }
Path& path_of(Term& t, Arm arm) { return arm == Arm::a ? t.path_a : t.path_b; }
double& delay_of(Term& t, Arm arm) { return arm == Arm::a ? t.delay_a : t.delay_b; }

auto discrete_key(const Term& t) { return std::tie(t.pol_a, t.pol_b, t.path_a, t.path_b); }

bool close_delay(double x, double y, double rtol) {
  return std::abs(x - y) <= rtol * std::max(std::abs(x), std::abs(y)) + 1e-30;
}

bool same_key(const Term& x, const Term& y, double rtol) {
  return discrete_key(x) == discrete_key(y) && close_delay(x.delay_a, y.delay_a, rtol) &&
         close_delay(x.delay_b, y.delay_b, rtol);
}

}  // namespace

Spectrum::Spectrum(double omega0, double sigma) : omega0_(omega0), sigma_(sigma) {
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw PreconditionError("spectrum: omega0 must be > 0");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw PreconditionError("spectrum: sigma must be > 0");
}

double Spectrum::density(double omega) const {
  const double u = (omega - omega0_) / sigma_;
  return 2.0 / (std::sqrt(std::numbers::pi) * sigma_) * std::exp(-4.0 * u * u);
}

BiphotonState::BiphotonState(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
    return std::tie(x.pol_a, x.pol_b, x.path_a, x.path_b, x.delay_a, x.delay_b) <
           std::tie(y.pol_a, y.pol_b, y.path_a, y.path_b, y.delay_a, y.delay_b);
  });
  for (const auto& t : terms) {
    if (!terms_.empty() && same_key(terms_.back(), t, 1e-12))
      terms_.back().amp += t.amp;
    else
      terms_.push_back(t);
  }
  std::erase_if(terms_, [](const Term& t) { return std::abs(t.amp) < kPruneTol; });
}

double BiphotonState::weight() const {
  double w = 0.0;
  for (const auto& t : terms_) w += std::norm(t.amp);
  return w;
}

bool approx_equal(const BiphotonState& x, const BiphotonState& y, double amp_tol, double delay_rtol) {
  const auto tx = x.terms();
  const auto ty = y.terms();
  if (tx.size() != ty.size()) return false;
  for (std::size_t i = 0; i < tx.size(); ++i) {
    if (!same_key(tx[i], ty[i], delay_rtol)) return false;
    if (std::abs(tx[i].amp - ty[i].amp) > amp_tol) return false;
  }
  return true;
}

BiphotonState bell_state() {
  const double r = 1.0 / std::numbers::sqrt2;
  return BiphotonState({Term{r, Pol::H, Pol::H}, Term{r, Pol::V, Pol::V}});
}

namespace jones {

JonesMatrix hadamard() {
  const double r = 1.0 / std::numbers::sqrt2;
  return {{r, r, r, -r}};
}

JonesMatrix bit_flip() { return pauli::x(); }

JonesMatrix plus_minus_map() {
  // columns are the images of H and V
  const double r = 1.0 / std::numbers::sqrt2;
  return {{r, -r, r, r}};
}

JonesMatrix half_wave_plate(double deg) {
  const double t = 2.0 * deg * std::numbers::pi / 180.0;
  return {{std::cos(t), std::sin(t), std::sin(t), -std::cos(t)}};
}

}  // namespace jones

BiphotonState apply_quartz(const BiphotonState& s, Arm arm, double thickness, double delta_n, double lambda0) {
  validate(QuartzPlate{arm, thickness, delta_n, lambda0});
  const double delay = thickness * lambda0 * delta_n / kSpeedOfLight;
  std::vector<Term> out(s.terms().begin(), s.terms().end());
  for (auto& t : out)
    if (pol_of(t, arm) == Pol::V) delay_of(t, arm) += delay;
  return BiphotonState(std::move(out));
}

BiphotonState apply_jones(const BiphotonState& s, Arm arm, const JonesMatrix& j) {
  validate(MapPlate{arm, j});
  std::vector<Term> out;
  out.reserve(2 * s.terms().size());
  for (const auto& t : s.terms()) {
    Term in = t;
    const auto col = static_cast<std::size_t>(pol_of(in, arm));
    for (const Pol p : {Pol::H, Pol::V}) {
      const cplx m = j(static_cast<std::size_t>(p), col);
      if (m == cplx(0.0)) continue;
      Term u = in;
      pol_of(u, arm) = p;
      u.amp *= m;
      out.push_back(u);
    }
  }
  return BiphotonState(std::move(out));
}

BiphotonState apply_bd_split(const BiphotonState& s, Arm arm) {
  std::vector<Term> out(s.terms().begin(), s.terms().end());
  for (auto& t : out) {
    if (path_of(t, arm) != Path::I) throw PreconditionError("beam displacer split: arm already split");
    if (pol_of(t, arm) == Pol::V) path_of(t, arm) = Path::II;
  }
  return BiphotonState(std::move(out));
}

BiphotonState apply_bd_merge(const BiphotonState& s, Arm arm, MergePorts ports) {
  const Pol bright_in_path_one = ports == MergePorts::direct ? Pol::H : Pol::V;
  std::vector<Term> out;
  for (Term t : s.terms()) {
    const bool path_one = path_of(t, arm) == Path::I;
    const bool bright = path_one == (pol_of(t, arm) == bright_in_path_one);
    if (!bright) continue;
    path_of(t, arm) = Path::I;
    out.push_back(t);
  }
  return BiphotonState(std::move(out));
}

void validate(const Element& e) {
  std::visit(
      [](const auto& el) {
        using T = std::decay_t<decltype(el)>;
        if constexpr (std::is_same_v<T, QuartzPlate>) {
          if (!(el.thickness >= 0.0) || !std::isfinite(el.thickness))
            throw PreconditionError("quartz plate: thickness must be >= 0");
          if (!(el.delta_n > 0.0 && el.delta_n < 1.0))
            throw PreconditionError("quartz plate: delta_n must be in (0, 1)");
          if (!(el.lambda0 > 0.0)) throw PreconditionError("quartz plate: lambda0 must be > 0");
        } else if constexpr (std::is_same_v<T, HalfWavePlate>) {
          if (!std::isfinite(el.axis_deg)) throw PreconditionError("half-wave plate: non-finite angle");
        } else if constexpr (std::is_same_v<T, MapPlate>) {
          for (const auto& z : el.map.e)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
              throw PreconditionError("map plate: non-finite entry");
        }
      },
      e);
}

BiphotonState apply(const BiphotonState& s, const Element& e) {
  return std::visit(
      [&s](const auto& el) -> BiphotonState {
        using T = std::decay_t<decltype(el)>;
        if constexpr (std::is_same_v<T, QuartzPlate>) {
          return apply_quartz(s, el.arm, el.thickness, el.delta_n, el.lambda0);
        } else if constexpr (std::is_same_v<T, HalfWavePlate>) {
          validate(el);
          return apply_jones(s, el.arm, jones::half_wave_plate(el.axis_deg));
        } else if constexpr (std::is_same_v<T, MapPlate>) {
          return apply_jones(s, el.arm, el.map);
        } else if constexpr (std::is_same_v<T, BeamDisplacerSplit>) {
          return apply_bd_split(s, el.arm);
        } else {
          return apply_bd_merge(s, el.arm, el.ports);
        }
      },
      e);
}

BiphotonState propagate(BiphotonState s, std::span<const Element> pipeline) {
  for (const auto& e : pipeline) s = entrec::apply(s, e);
  return s;
}

cplx gaussian_characteristic(double dalpha, const Spectrum& sp) {
  const double x = dalpha * sp.sigma();
  return std::exp(-x * x / 16.0) * std::polar(1.0, dalpha * sp.omega0());
}

bool fully_recombined(const BiphotonState& s) {
  return std::all_of(s.terms().begin(), s.terms().end(),
                     [](const Term& t) { return t.path_a == Path::I && t.path_b == Path::I; });
}

Reduced reduce(const BiphotonState& s, const Spectrum& sp_a, const Spectrum& sp_b) {
  if (!fully_recombined(s)) throw PreconditionError("reduce: state still has a split arm");
  const auto terms = s.terms();
  ComplexMatrix4 acc;
  for (const auto& m : terms) {
    const std::size_t p = basis_index(m.pol_a, m.pol_b);
    for (const auto& n : terms) {
      const std::size_t q = basis_index(n.pol_a, n.pol_b);
      if (q < p) continue;
      acc(p, q) += m.amp * std::conj(n.amp) * gaussian_characteristic(m.delay_a - n.delay_a, sp_a) *
                   gaussian_characteristic(m.delay_b - n.delay_b, sp_b);
    }
  }
  double trace = 0.0;
  for (std::size_t i = 0; i < 4; ++i) trace += acc(i, i).real();
  if (!(trace >= 1e-14)) throw PostSelectionError("reduce: every amplitude was post-selected away");
  ComplexMatrix4 rho;
  for (std::size_t i = 0; i < 4; ++i) {
    rho(i, i) = acc(i, i).real() / trace;
    for (std::size_t j = i + 1; j < 4; ++j) {
      rho(i, j) = acc(i, j) / trace;
      rho(j, i) = std::conj(rho(i, j));
    }
  }
  return {DensityMatrix(rho), trace};
}

}  // namespace entrec

#include "entrec/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "entrec/errors.hpp"

namespace entrec {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double hermitian_defect(const ComplexMatrix4& m) {
  double d = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

}  // namespace

DensityMatrix::DensityMatrix(const ComplexMatrix4& m) : m_(m) {
  if (!all_finite(m)) throw PreconditionError("density matrix: non-finite entry");
  if (hermitian_defect(m) >= kHermitianTol)
    throw PreconditionError("density matrix: not Hermitian");
  if (std::abs(trace4(m) - 1.0) >= kTraceTol)
    throw PreconditionError("density matrix: trace differs from 1");
  const auto ev = eig4(m);
  for (const auto& l : ev)
    if (l.real() <= -kPsdTol) throw PreconditionError("density matrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(const std::array<cplx, 4>& psi) {
  double n2 = 0.0;
  for (const auto& a : psi) n2 += std::norm(a);
  if (!(n2 > 0.0)) throw PreconditionError("pure state: zero vector");
  ComplexMatrix4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = psi[i] * std::conj(psi[j]) / n2;
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix(ComplexMatrix4::diag(0.25, 0.25, 0.25, 0.25));
}

DensityMatrix DensityMatrix::bell_phi_plus() { return pure({1.0, 0.0, 0.0, 1.0}); }

double reduce_angle(double deg) {
  double r = std::fmod(deg, 180.0);
  if (r <= -90.0) r += 180.0;
  if (r > 90.0) r -= 180.0;
  return r;
}

ChshSetting::ChshSetting(double a1_, double a1p_, double b2_, double b2p_)
    : a1(reduce_angle(a1_)), a1p(reduce_angle(a1p_)), b2(reduce_angle(b2_)), b2p(reduce_angle(b2p_)) {}

double concurrence(const DensityMatrix& rho) {
  const ComplexMatrix4 yy = kron2(pauli::y(), pauli::y());
  const ComplexMatrix4& m = rho.matrix();
  const ComplexMatrix4 r = matmul4(matmul4(m, yy), matmul4(conj4(m), yy));
  const auto ev = eig4(r);

  // Rounding in R is ~eps |rho| |rho~| = eps |rho|^2 entrywise (|R| itself can be
  // far smaller for nearly separable pure states); eigenvalues below that are 0.
  const double fro = frobenius(m);
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() * fro * fro;
  std::array<double, 4> roots{};
  for (std::size_t i = 0; i < 4; ++i) {
    const double l = ev[i].real();
    if (l < -1e-10) throw PreconditionError("concurrence: negative spin-flip eigenvalue");
    roots[i] = l <= floor ? 0.0 : std::sqrt(l);
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  const double c = roots[0] - roots[1] - roots[2] - roots[3];
  return std::clamp(c, 0.0, 1.0);
}

double coincidence_prob(const DensityMatrix& rho, double theta1_deg, double theta2_deg) {
  const double c1 = std::cos(theta1_deg * kDeg), s1 = std::sin(theta1_deg * kDeg);
  const double c2 = std::cos(theta2_deg * kDeg), s2 = std::sin(theta2_deg * kDeg);
  const std::array<double, 4> v{c1 * c2, c1 * s2, s1 * c2, s1 * s2};
  double p = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) p += v[i] * v[j] * rho(i, j).real();
  return std::clamp(p, 0.0, 1.0);
}

double correlation_E(const DensityMatrix& rho, double theta1_deg, double theta2_deg) {
  const double pp = coincidence_prob(rho, theta1_deg, theta2_deg);
  const double oo = coincidence_prob(rho, theta1_deg + 90.0, theta2_deg + 90.0);
  const double po = coincidence_prob(rho, theta1_deg, theta2_deg + 90.0);
  const double op = coincidence_prob(rho, theta1_deg + 90.0, theta2_deg);
  const double total = pp + oo + po + op;
  if (total <= 1e-12) throw DegenerateStateError("correlation_E: vanishing coincidence total");
  return (pp + oo - po - op) / total;
}

double chsh_S(const DensityMatrix& rho, const ChshSetting& s) {
  return correlation_E(rho, s.a1, s.b2) + correlation_E(rho, s.a1, s.b2p) +
         correlation_E(rho, s.a1p, s.b2) - correlation_E(rho, s.a1p, s.b2p);
}

ChshResult maximize_chsh_linear(const DensityMatrix& rho) {
  constexpr int kGrid = 36;  // 5 degree nodes on (-90, 90]
  auto node = [](int i) { return -85.0 + 5.0 * i; };

  std::vector<double> table(kGrid * kGrid);
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j) table[i * kGrid + j] = correlation_E(rho, node(i), node(j));
  auto e = [&](int i, int j) { return table[i * kGrid + j]; };

  // For fixed arm-a angles the two arm-b maximizations decouple.
  double best = -std::numeric_limits<double>::infinity();
  std::array<int, 4> arg{};
  for (int i = 0; i < kGrid; ++i) {
    for (int ip = 0; ip < kGrid; ++ip) {
      int bj = 0, bjp = 0;
      double sum_best = -4.0, diff_best = -4.0;
      for (int j = 0; j < kGrid; ++j) {
        const double sum = e(i, j) + e(ip, j);
        const double diff = e(i, j) - e(ip, j);
        if (sum > sum_best) sum_best = sum, bj = j;
        if (diff > diff_best) diff_best = diff, bjp = j;
      }
      if (sum_best + diff_best > best) {
        best = sum_best + diff_best;
        arg = {i, ip, bj, bjp};
      }
    }
  }

  std::array<double, 4> x{node(arg[0]), node(arg[1]), node(arg[2]), node(arg[3])};
  auto eval = [&](const std::array<double, 4>& a) {
    return chsh_S(rho, ChshSetting(a[0], a[1], a[2], a[3]));
  };
  best = eval(x);
  for (double step = 2.56; step >= 0.01 - 1e-12;) {
    bool improved = false;
    for (std::size_t k = 0; k < 4; ++k) {
      for (const double d : {step, -step}) {
        auto y = x;
        y[k] += d;
        const double v = eval(y);
        if (v > best) {
          best = v;
          x = y;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return {ChshSetting(x[0], x[1], x[2], x[3]), best};
}

namespace {

std::array<double, 3> symmetric_eigenvalues3(const std::array<std::array<double, 3>, 3>& m) {
  const double p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
  if (p1 == 0.0) return {m[0][0], m[1][1], m[2][2]};
  const double q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
  const double p2 = (m[0][0] - q) * (m[0][0] - q) + (m[1][1] - q) * (m[1][1] - q) +
                    (m[2][2] - q) * (m[2][2] - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  std::array<std::array<double, 3>, 3> b{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = (m[i][j] - (i == j ? q : 0.0)) / p;
  const double det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                     b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                     b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  const double r = std::clamp(det / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  return {e1, 3.0 * q - e1 - e3, e3};
}

}  // namespace

double horodecki_Smax(const DensityMatrix& rho) {
  const std::array<ComplexMatrix2, 3> sig{pauli::x(), pauli::y(), pauli::z()};
  std::array<std::array<double, 3>, 3> t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = trace4(matmul4(rho.matrix(), kron2(sig[i], sig[j]))).real();
  std::array<std::array<double, 3>, 3> tt{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) tt[i][j] += t[k][i] * t[k][j];
  auto u = symmetric_eigenvalues3(tt);
  std::sort(u.begin(), u.end(), std::greater<>());
  const double s = 2.0 * std::sqrt(std::max(0.0, u[0] + u[1]));
  return std::min(s, 2.0 * std::numbers::sqrt2);
}

}  // namespace entrec

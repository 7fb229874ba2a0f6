#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "entrec/errors.hpp"
#include "entrec/states.hpp"
#include "helpers.hpp"

using namespace entrec;

namespace {

constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;

DensityMatrix x_state(double p1, double p2, double p3, double p4, cplx z14, cplx z23) {
  ComplexMatrix4 m = ComplexMatrix4::diag(p1, p2, p3, p4);
  m(0, 3) = z14;
  m(3, 0) = std::conj(z14);
  m(1, 2) = z23;
  m(2, 1) = std::conj(z23);
  return DensityMatrix(m);
}

DensityMatrix rho1(double k) { return x_state(0.5, 0, 0, 0.5, 0.5 * k, 0); }

double x_state_concurrence(const DensityMatrix& r) {
  const double a = std::abs(r(0, 3)) - std::sqrt(r(1, 1).real() * r(2, 2).real());
  const double b = std::abs(r(1, 2)) - std::sqrt(r(0, 0).real() * r(3, 3).real());
  return 2.0 * std::max({0.0, a, b});
}

// Test-side correlation: explicit projector contraction with |theta>, |theta + 90>.
double contract(const DensityMatrix& r, double t1, double t2) {
  const double d = std::numbers::pi / 180.0;
  const double c1 = std::cos(t1 * d), s1 = std::sin(t1 * d), c2 = std::cos(t2 * d), s2 = std::sin(t2 * d);
  const double v[4] = {c1 * c2, c1 * s2, s1 * c2, s1 * s2};
  cplx s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += v[i] * r(i, j) * v[j];
  return s.real();
}

double corr(const DensityMatrix& r, double t1, double t2) {
  const double pp = contract(r, t1, t2), mm = contract(r, t1 + 90, t2 + 90);
  const double pm = contract(r, t1, t2 + 90), mp = contract(r, t1 + 90, t2);
  return (pp + mm - pm - mp) / (pp + mm + pm + mp);
}

double brute_force_chsh(const DensityMatrix& r, double step) {
  std::vector<double> angles;
  for (double t = -90 + step; t <= 90 + 1e-9; t += step) angles.push_back(t);
  const std::size_t n = angles.size();
  std::vector<double> e(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = corr(r, angles[i], angles[j]);
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t ip = 0; ip < n; ++ip) {
      double bs = -1e9, bd = -1e9;
      for (std::size_t j = 0; j < n; ++j) {
        bs = std::max(bs, e[i * n + j] + e[ip * n + j]);
        bd = std::max(bd, e[i * n + j] - e[ip * n + j]);
      }
      // S = E(a1,b) + E(a1',b) + E(a1,b') - E(a1',b'): the two b columns decouple
      best = std::max(best, std::abs(bs + bd));
    }
  return best;
}

}  // namespace

TEST_CASE("density matrix validation") {
  CHECK_NOTHROW(DensityMatrix::bell_phi_plus());
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix4::diag(0.5, 0.5, 0.5, -0.5)), PreconditionError);
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix4::diag(0.5, 0.5, 0.5, 0.5)), PreconditionError);
  auto m = ComplexMatrix4::diag(0.25, 0.25, 0.25, 0.25);
  m(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{m}, PreconditionError);
}

TEST_CASE("concurrence examples") {
  CHECK(concurrence(DensityMatrix::bell_phi_plus()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(concurrence(DensityMatrix::maximally_mixed()) == doctest::Approx(0.0));
  CHECK(std::abs(concurrence(rho1(0.37)) - 0.37) < 1e-12);
}

TEST_CASE("concurrence matches the X-state closed form") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 10000; ++n) {
    double p[4];
    double sum = 0.0;
    for (double& x : p) sum += (x = u(rng));
    for (double& x : p) x /= sum;
    const cplx z14 = std::polar(std::sqrt(p[0] * p[3]) * u(rng), 6.3 * u(rng));
    const cplx z23 = std::polar(std::sqrt(p[1] * p[2]) * u(rng), 6.3 * u(rng));
    const auto r = x_state(p[0], p[1], p[2], p[3], z14, z23);
    CHECK(std::abs(concurrence(r) - x_state_concurrence(r)) < 1e-10);
  }
}

TEST_CASE("concurrence of pure states is 2|ad - bc|") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> n;
  for (int t = 0; t < 1000; ++t) {
    std::array<cplx, 4> psi;
    double norm = 0.0;
    for (auto& x : psi) norm += std::norm(x = {n(rng), n(rng)});
    for (auto& x : psi) x /= std::sqrt(norm);
    const double expect = 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
    CHECK(std::abs(concurrence(DensityMatrix::pure(psi)) - expect) < 1e-10);
  }
}

TEST_CASE("concurrence is invariant under local unitaries") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 1000; ++t) {
    const auto r = testutil::random_density(rng);
    const auto u = kron2(testutil::random_unitary2(rng), testutil::random_unitary2(rng));
    auto m = matmul4(matmul4(u, r.matrix()), adjoint4(u));
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = m(i, i).real();
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
    CHECK(std::abs(concurrence(DensityMatrix(m)) - concurrence(r)) < 1e-8);
  }
}

TEST_CASE("coincidence probabilities and correlations") {
  const auto bell = DensityMatrix::bell_phi_plus();
  CHECK(coincidence_prob(bell, 0, 0) == doctest::Approx(0.5));
  CHECK(coincidence_prob(bell, 0, 90) == doctest::Approx(0.0));
  CHECK(coincidence_prob(bell, 22.5, 22.5) == doctest::Approx(0.5));
  CHECK(correlation_E(bell, 0, 0) == doctest::Approx(1.0));
  CHECK(std::abs(correlation_E(bell, 0, 45)) < 1e-12);
  CHECK(correlation_E(bell, 0, 22.5) == doctest::Approx(std::cos(std::numbers::pi / 4)));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ang(-180, 180);
  for (int t = 0; t < 200; ++t) {
    const auto r = testutil::random_density(rng);
    const double a = ang(rng), b = ang(rng);
    CHECK(std::abs(correlation_E(r, a, b) - corr(r, a, b)) < 1e-12);
  }
}

TEST_CASE("CHSH examples") {
  const auto bell = DensityMatrix::bell_phi_plus();
  CHECK(chsh_S(bell, {0, 45, 22.5, -22.5}) == doctest::Approx(kTsirelson));
  const auto hh = DensityMatrix::pure({1, 0, 0, 0});
  CHECK(std::abs(chsh_S(hh, {0, 45, 22.5, -22.5})) <= 2.0);
  CHECK(std::abs(chsh_S(DensityMatrix::maximally_mixed(), {10, 20, 30, 40})) < 1e-12);
  CHECK(reduce_angle(-90) == 90.0);
  CHECK(reduce_angle(135) == -45.0);
}

TEST_CASE("maximize_chsh_linear") {
  const auto bell = maximize_chsh_linear(DensityMatrix::bell_phi_plus());
  CHECK(std::abs(bell.s_max - kTsirelson) < 1e-4);
  CHECK(chsh_S(DensityMatrix::bell_phi_plus(), bell.setting) == doctest::Approx(bell.s_max));
  CHECK(maximize_chsh_linear(DensityMatrix::maximally_mixed()).s_max < 1e-9);

  // X state with real coherence k: restricted-plane maximum 2 sqrt(1 + k^2)
  const auto r = rho1(0.6);
  const double s = maximize_chsh_linear(r).s_max;
  CHECK(std::abs(s - 2.0 * std::sqrt(1.36)) < 1e-6);
  const double grid = brute_force_chsh(r, 1.0);
  CHECK(grid <= s + 1e-9);
  CHECK(s - grid < 2e-3);
}

TEST_CASE("maximize_chsh_linear vs 1 degree brute force on random states") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 5; ++t) {
    const auto r = testutil::random_density(rng);
    const double s = maximize_chsh_linear(r).s_max;
    const double grid = brute_force_chsh(r, 1.0);
    CHECK(grid <= s + 1e-9);
    CHECK(s - grid < 5e-3);
  }
}

TEST_CASE("Horodecki bound") {
  CHECK(horodecki_Smax(DensityMatrix::bell_phi_plus()) == doctest::Approx(kTsirelson));
  CHECK(horodecki_Smax(DensityMatrix::maximally_mixed()) == doctest::Approx(0.0));
  CHECK(horodecki_Smax(DensityMatrix::pure({1, 0, 0, 0})) == doctest::Approx(2.0));
  CHECK(maximize_chsh_linear(DensityMatrix::pure({1, 0, 0, 0})).s_max == doctest::Approx(2.0).epsilon(1e-6));
  std::mt19937_64 rng(31);
  for (int t = 0; t < 300; ++t) {
    const auto r = testutil::random_density(rng);
    CHECK(maximize_chsh_linear(r).s_max <= horodecki_Smax(r) + 1e-9);
  }
  for (double k : {0.1, 0.5, 0.9})
    CHECK(horodecki_Smax(rho1(k)) == doctest::Approx(2.0 * std::sqrt(1.0 + k * k)));
}

#include <doctest.h>

#include <random>

#include "entrec/errors.hpp"
#include "entrec/oracle.hpp"
#include "entrec/scenarios.hpp"

using namespace entrec;
using oracle::QuadratureGrid;

namespace {

const ExperimentConfig kCfg;
const Spectrum kSpec = make_spectrum(kCfg);
const QuadratureGrid kReduceGrid{8.0, 2049};

double entry_error(const Reduced& a, const Reduced& b) {
  return std::max(max_abs(a.rho.matrix() - b.rho.matrix()), std::abs(a.success_prob - b.success_prob));
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS((QuadratureGrid{8.0, 1024}.validate()), PreconditionError);
  CHECK_THROWS_AS((QuadratureGrid{8.0, 513}.validate()), PreconditionError);
  CHECK_THROWS_AS((QuadratureGrid{5.0, 2049}.validate()), PreconditionError);
  CHECK_NOTHROW((QuadratureGrid{6.0, 1025}.validate()));
}

TEST_CASE("spectrum normalization") {
  const QuadratureGrid g;
  CHECK(std::abs(oracle::numeric_characteristic(0.0, kSpec, g) - 1.0) < 1e-12);
}

TEST_CASE("numeric characteristic matches the closed form") {
  const QuadratureGrid g;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 8.0);
  for (int t = 0; t < 100; ++t) {
    const double dalpha = u(rng) / kSpec.sigma();
    const cplx ref = oracle::numeric_characteristic(dalpha, kSpec, g);
    CHECK(std::abs(ref - gaussian_characteristic(dalpha, kSpec)) < 1e-10);
  }
}

TEST_CASE("numeric characteristic converges under refinement") {
  for (double x : {0.5, 2.0, 6.0}) {
    const double dalpha = x / kSpec.sigma();
    const cplx a = oracle::numeric_characteristic(dalpha, kSpec, {8.0, 8193});
    const cplx b = oracle::numeric_characteristic(dalpha, kSpec, {8.0, 16385});
    CHECK(std::abs(a - b) < 1e-12);
    const cplx exact = gaussian_characteristic(dalpha, kSpec);
    const double e1 = std::abs(oracle::numeric_characteristic(dalpha, kSpec, {8.0, 1025}) - exact);
    const double e2 = std::abs(oracle::numeric_characteristic(dalpha, kSpec, {8.0, 2049}) - exact);
    CHECK(e2 <= std::max(e1 / 4.0, 1e-13));
  }
}

TEST_CASE("under-resolved oscillation is rejected") {
  const QuadratureGrid g{8.0, 1025};
  const double too_far = 2.0 * oracle::max_resolved_delay_sigma(g) / kSpec.sigma();
  CHECK_THROWS_AS(oracle::numeric_characteristic(too_far, kSpec, g), ResolutionError);
  CHECK_THROWS_AS(oracle::numeric_reduce(propagate(bell_state(), std::vector<Element>{quartz(kCfg, Arm::b, 2000)}),
                                         kSpec, kSpec, g),
                  ResolutionError);
}

TEST_CASE("numeric reduce of the Bell pair") {
  const auto r = oracle::numeric_reduce(bell_state(), kSpec, kSpec, kReduceGrid);
  CHECK(max_abs(r.rho.matrix() - DensityMatrix::bell_phi_plus().matrix()) < 1e-12);
  CHECK(std::abs(r.success_prob - 1.0) < 1e-12);
}

TEST_CASE("numeric reduce agrees with the closed form") {
  const std::vector<Element> deph{quartz(kCfg, Arm::b, 390)};
  const auto sa = propagate(bell_state(), deph);
  CHECK(entry_error(reduce(sa, kSpec, kSpec), oracle::numeric_reduce(sa, kSpec, kSpec, kReduceGrid)) < 1e-9);

  const auto sr = propagate(bell_state(), recovery_apparatus(kCfg, 195, 300));
  CHECK(entry_error(reduce(sr, kSpec, kSpec), oracle::numeric_reduce(sr, kSpec, kSpec, kReduceGrid)) < 1e-9);

  auto pipe = partial_input_preparation(kCfg, 98);
  const auto app = recovery_apparatus(kCfg, 150, 200);
  pipe.insert(pipe.end(), app.begin(), app.end());
  const auto se = propagate(bell_state(), pipe);
  CHECK(entry_error(reduce(se, kSpec, kSpec), oracle::numeric_reduce(se, kSpec, kSpec, kReduceGrid)) < 1e-9);
}

TEST_CASE("parallel numeric reduce is bit-identical to serial") {
  const auto s = propagate(bell_state(), recovery_apparatus(kCfg, 120, 80));
  const QuadratureGrid g{8.0, 1025};
  const auto par = oracle::numeric_reduce(s, kSpec, kSpec, g);
  const auto ser = oracle::numeric_reduce_serial(s, kSpec, kSpec, g);
  CHECK(par.rho.matrix() == ser.rho.matrix());
  CHECK(par.success_prob == ser.success_prob);
}

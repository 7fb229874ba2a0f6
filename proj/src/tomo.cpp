#include "entrec/tomo.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <numbers>

#include "entrec/errors.hpp"

namespace entrec::tomo {

namespace {

using Matrix16 = Eigen::Matrix<double, 16, 16>;
using Vector16 = Eigen::Matrix<double, 16, 1>;

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kMaxCondition = 1e8;

std::array<cplx, 2> analyzer_state(const Analyzer& a) {
  const double t = a.theta_deg * kDeg;
  const cplx phase = a.circular ? cplx(0.0, 1.0) : cplx(1.0);
  return {std::cos(t), phase * std::sin(t)};
}

// <phi| sigma_i |phi> for i = 0 (identity), x, y, z.
std::array<double, 4> bloch(const Analyzer& a) {
  const auto v = analyzer_state(a);
  const cplx cross = std::conj(v[0]) * v[1];
  return {std::norm(v[0]) + std::norm(v[1]), 2.0 * cross.real(), 2.0 * cross.imag(),
          std::norm(v[0]) - std::norm(v[1])};
}

Matrix16 measurement_matrix(std::span<const Projection> ps) {
  Matrix16 b;
  for (std::size_t k = 0; k < 16; ++k) {
    const auto ba = bloch(ps[k].a);
    const auto bb = bloch(ps[k].b);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) b(k, 4 * i + j) = 0.25 * ba[i] * bb[j];
  }
  return b;
}

const std::array<ComplexMatrix2, 4>& pauli_basis() {
  static const std::array<ComplexMatrix2, 4> basis{ComplexMatrix2::identity(), pauli::x(), pauli::y(), pauli::z()};
  return basis;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Pairwise summation keeps the aggregate independent of how trials were scheduled.
double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

std::pair<double, double> mean_std(std::span<const double> v) {
  const double mean = pairwise_sum(v) / static_cast<double>(v.size());
  std::vector<double> dev(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) dev[i] = (v[i] - mean) * (v[i] - mean);
  return {mean, std::sqrt(pairwise_sum(dev) / static_cast<double>(v.size() - 1))};
}

}  // namespace

ProjectionSet ProjectionSet::standard() {
  const std::array<Analyzer, 4> singles{Analyzer{0.0, false}, Analyzer{90.0, false}, Analyzer{45.0, false},
                                        Analyzer{45.0, true}};
  std::vector<Projection> ps;
  for (const auto& a : singles)
    for (const auto& b : singles) ps.push_back({a, b});
  return ProjectionSet(std::move(ps));
}

ProjectionSet::ProjectionSet(std::vector<Projection> projections) : projections_(std::move(projections)) {
  if (projections_.size() != 16) throw PreconditionError("projection set: exactly 16 projections required");
  const Matrix16 b = measurement_matrix(projections_);
  Eigen::JacobiSVD<Matrix16> svd(b);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  cond_ = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
  if (!(cond_ < kMaxCondition)) throw PreconditionError("projection set: measurement matrix is singular");
}

double projection_probability(const DensityMatrix& rho, const Projection& p) {
  const auto va = analyzer_state(p.a);
  const auto vb = analyzer_state(p.b);
  const std::array<cplx, 4> v{va[0] * vb[0], va[0] * vb[1], va[1] * vb[0], va[1] * vb[1]};
  cplx s = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) s += std::conj(v[i]) * rho(i, j) * v[j];
  return std::clamp(s.real(), 0.0, 1.0);
}

Sampler::Sampler(std::uint64_t seed) : engine_(seed) {}

double Sampler::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Sampler::normal() {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Sampler::poisson(double mean) {
  if (!(mean > 0.0)) return 0;
  if (mean >= 30.0) {
    const double x = std::round(mean + std::sqrt(mean) * normal());
    return x <= 0.0 ? 0 : static_cast<std::uint64_t>(x);
  }
  const double u = uniform();
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t k = 0;
  while (u > cdf && k < 1000) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 1));
}

CountRecord simulate_counts(const DensityMatrix& rho, const ProjectionSet& ps, std::uint64_t pairs,
                            std::uint64_t seed, double angle_jitter_deg) {
  if (pairs == 0) throw PreconditionError("simulate_counts: N must be > 0");
  if (!(angle_jitter_deg >= 0.0)) throw PreconditionError("simulate_counts: jitter must be >= 0");
  Sampler rng(seed);
  CountRecord cr;
  cr.pairs = pairs;
  cr.seed = seed;
  cr.angle_jitter_deg = angle_jitter_deg;
  for (Projection p : ps.projections()) {
    if (angle_jitter_deg > 0.0) {
      p.a.theta_deg += angle_jitter_deg * rng.normal();
      p.b.theta_deg += angle_jitter_deg * rng.normal();
    }
    const double expected = static_cast<double>(pairs) * projection_probability(rho, p);
    cr.expected.push_back(expected);
    cr.counts.push_back(rng.poisson(expected));
  }
  return cr;
}

Reconstruction linear_reconstruct(std::span<const double> frequencies, const ProjectionSet& ps) {
  if (frequencies.size() != 16) throw PreconditionError("linear_reconstruct: 16 frequencies required");
  const Matrix16 b = measurement_matrix(ps.projections());
  Vector16 p;
  for (std::size_t k = 0; k < 16; ++k) p(k) = frequencies[k];
  const Vector16 r = b.fullPivLu().solve(p);
  if (!(r(0) > 0.0)) throw PreconditionError("linear_reconstruct: non-positive reconstructed trace");

  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  const auto& basis = pauli_basis();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const ComplexMatrix4 g = kron2(basis[i], basis[j]);
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) m(x, y) += 0.25 * r(4 * i + j) * g(x, y);
    }
  m /= r(0);
  m = (0.5 * (m + m.adjoint())).eval();

  bool projected = false;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m);
  if (es.eigenvalues().minCoeff() < -DensityMatrix::kPsdTol) {
    Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0);
    ev /= ev.sum();
    m = es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    m = (0.5 * (m + m.adjoint())).eval();
    projected = true;
  }
  ComplexMatrix4 out;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) out(x, y) = m(x, y);
  const double tr = trace4(out).real();
  out = cplx(1.0 / tr) * out;
  for (std::size_t i = 0; i < 4; ++i) out(i, i) = out(i, i).real();
  return {DensityMatrix(out), projected};
}

Reconstruction linear_reconstruct(const CountRecord& cr, const ProjectionSet& ps) {
  std::vector<double> f(cr.counts.size());
  for (std::size_t k = 0; k < f.size(); ++k)
    f[k] = static_cast<double>(cr.counts[k]) / static_cast<double>(cr.pairs);
  return linear_reconstruct(f, ps);
}

namespace {

struct TrialResult {
  double c;
  double s;
};

TrialResult run_trial(const DensityMatrix& rho, const ProjectionSet& ps, std::uint64_t pairs, std::uint64_t seed,
                      double jitter, bool with_chsh) {
  const auto cr = simulate_counts(rho, ps, pairs, seed, jitter);
  const auto rec = linear_reconstruct(cr, ps);
  return {concurrence(rec.rho), with_chsh ? maximize_chsh_linear(rec.rho).s_max : 0.0};
}

McSummary summarize(const std::vector<TrialResult>& results) {
  std::vector<double> c, s;
  for (const auto& r : results) {
    c.push_back(r.c);
    s.push_back(r.s);
  }
  const auto [mc, sc] = mean_std(c);
  const auto [ms, ss] = mean_std(s);
  return {mc, sc, ms, ss};
}

void check_trials(int trials) {
  if (trials < 2) throw PreconditionError("mc_error: at least 2 trials required");
}

}  // namespace

McSummary mc_error_serial(const DensityMatrix& rho, const ProjectionSet& ps, std::uint64_t pairs, int trials,
                          std::uint64_t seed, double angle_jitter_deg, bool with_chsh) {
  check_trials(trials);
  std::vector<TrialResult> results(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t)
    results[t] = run_trial(rho, ps, pairs, trial_seed(seed, static_cast<std::uint64_t>(t)), angle_jitter_deg,
                           with_chsh);
  return summarize(results);
}

McSummary mc_error(const DensityMatrix& rho, const ProjectionSet& ps, std::uint64_t pairs, int trials,
                   std::uint64_t seed, double angle_jitter_deg, bool with_chsh) {
  check_trials(trials);
  std::vector<TrialResult> results(static_cast<std::size_t>(trials));
  bool failed = false;
  std::string what;
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < trials; ++t) {
    try {
      results[t] = run_trial(rho, ps, pairs, trial_seed(seed, static_cast<std::uint64_t>(t)), angle_jitter_deg,
                             with_chsh);
    } catch (const std::exception& e) {
#pragma omp critical
      {
        failed = true;
        what = e.what();
      }
    }
  }
  if (failed) throw Error("mc_error: " + what);
  return summarize(results);
}

}  // namespace entrec::tomo

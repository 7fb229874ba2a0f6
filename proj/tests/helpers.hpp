#pragma once

#include <random>

#include "entrec/qmath.hpp"
#include "entrec/states.hpp"

namespace testutil {

using entrec::cplx;

inline entrec::ComplexMatrix4 random_matrix(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  entrec::ComplexMatrix4 m;
  for (auto& x : m.e) x = {n(rng), n(rng)};
  return m;
}

// G G^dagger / tr, full rank with probability one.
inline entrec::DensityMatrix random_density(std::mt19937_64& rng) {
  const auto g = random_matrix(rng);
  auto m = entrec::matmul4(g, entrec::adjoint4(g));
  m = cplx(1.0 / entrec::trace4(m).real()) * m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
  for (std::size_t i = 0; i < 4; ++i) m(i, i) = m(i, i).real();
  return entrec::DensityMatrix(m);
}

inline entrec::ComplexMatrix2 random_unitary2(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  // Haar-ish: normalized quaternion
  double q[4];
  double norm = 0.0;
  for (double& x : q) {
    x = n(rng);
    norm += x * x;
  }
  norm = std::sqrt(norm);
  for (double& x : q) x /= norm;
  const cplx a(q[0], q[1]), b(q[2], q[3]);
  const cplx phase = std::polar(1.0, std::uniform_real_distribution<double>(0, 6.283185307179586)(rng));
  entrec::ComplexMatrix2 u;
  u(0, 0) = a * phase;
  u(0, 1) = -std::conj(b) * phase;
  u(1, 0) = b * phase;
  u(1, 1) = std::conj(a) * phase;
  return u;
}

inline double max_diff(const entrec::ComplexMatrix4& a, const entrec::ComplexMatrix4& b) {
  return entrec::max_abs(a - b);
}

}  // namespace testutil

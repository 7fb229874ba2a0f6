#include "entrec/qmath.hpp"

#include <cmath>
#include <limits>

#include "entrec/errors.hpp"

namespace entrec {

ComplexMatrix2 ComplexMatrix2::identity() { return diag(1.0, 1.0); }

ComplexMatrix2 ComplexMatrix2::diag(cplx a, cplx b) {
  ComplexMatrix2 m;
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

ComplexMatrix4 ComplexMatrix4::identity() { return diag(1.0, 1.0, 1.0, 1.0); }

ComplexMatrix4 ComplexMatrix4::diag(cplx a, cplx b, cplx c, cplx d) {
  ComplexMatrix4 m;
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  return m;
}

namespace pauli {
ComplexMatrix2 x() { return {{0.0, 1.0, 1.0, 0.0}}; }
ComplexMatrix2 y() { return {{0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0}}; }
ComplexMatrix2 z() { return ComplexMatrix2::diag(1.0, -1.0); }
}  // namespace pauli

ComplexMatrix2 matmul2(const ComplexMatrix2& a, const ComplexMatrix2& b) {
  ComplexMatrix2 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
  return r;
}

ComplexMatrix2 adjoint2(const ComplexMatrix2& a) {
  ComplexMatrix2 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) r(i, j) = std::conj(a(j, i));
  return r;
}

ComplexMatrix4 kron2(const ComplexMatrix2& a, const ComplexMatrix2& b) {
  ComplexMatrix4 r;
  for (std::size_t ia = 0; ia < 2; ++ia)
    for (std::size_t ja = 0; ja < 2; ++ja)
      for (std::size_t ib = 0; ib < 2; ++ib)
        for (std::size_t jb = 0; jb < 2; ++jb) r(2 * ia + ib, 2 * ja + jb) = a(ia, ja) * b(ib, jb);
  return r;
}

ComplexMatrix4 matmul4(const ComplexMatrix4& a, const ComplexMatrix4& b) {
  ComplexMatrix4 r;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

ComplexMatrix4 adjoint4(const ComplexMatrix4& a) {
  ComplexMatrix4 r;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) r(i, j) = std::conj(a(j, i));
  return r;
}

ComplexMatrix4 conj4(const ComplexMatrix4& a) {
  ComplexMatrix4 r;
  for (std::size_t i = 0; i < 16; ++i) r.e[i] = std::conj(a.e[i]);
  return r;
}

cplx trace4(const ComplexMatrix4& a) { return a(0, 0) + a(1, 1) + a(2, 2) + a(3, 3); }

ComplexMatrix4 operator+(const ComplexMatrix4& a, const ComplexMatrix4& b) {
  ComplexMatrix4 r;
  for (std::size_t i = 0; i < 16; ++i) r.e[i] = a.e[i] + b.e[i];
  return r;
}

ComplexMatrix4 operator-(const ComplexMatrix4& a, const ComplexMatrix4& b) {
  ComplexMatrix4 r;
  for (std::size_t i = 0; i < 16; ++i) r.e[i] = a.e[i] - b.e[i];
  return r;
}

ComplexMatrix4 operator*(cplx s, const ComplexMatrix4& a) {
  ComplexMatrix4 r;
  for (std::size_t i = 0; i < 16; ++i) r.e[i] = s * a.e[i];
  return r;
}

double max_abs(const ComplexMatrix4& a) {
  double m = 0.0;
  for (const auto& z : a.e) m = std::max(m, std::abs(z));
  return m;
}

double frobenius(const ComplexMatrix4& a) {
  double s = 0.0;
  for (const auto& z : a.e) s += std::norm(z);
  return std::sqrt(s);
}

bool all_finite(const ComplexMatrix4& a) {
  for (const auto& z : a.e)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

namespace {

constexpr int kMaxIterationsPerEigenvalue = 60;

void reduce_to_hessenberg(ComplexMatrix4& h) {
  for (std::size_t k = 0; k + 2 < 4; ++k) {
    std::array<cplx, 4> v{};
    double xnorm2 = 0.0;
    for (std::size_t i = k + 1; i < 4; ++i) {
      v[i] = h(i, k);
      xnorm2 += std::norm(v[i]);
    }
    const double xnorm = std::sqrt(xnorm2);
    if (xnorm == 0.0) continue;
    const double a0 = std::abs(v[k + 1]);
    const cplx phase = a0 == 0.0 ? cplx(1.0) : v[k + 1] / a0;
    v[k + 1] += phase * xnorm;  // v = x - alpha e1, alpha = -phase |x|
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < 4; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 == 0.0) continue;
    const double scale = 2.0 / vnorm2;

    // H <- P H, P = I - scale v v^H
    for (std::size_t j = 0; j < 4; ++j) {
      cplx s = 0.0;
      for (std::size_t i = k + 1; i < 4; ++i) s += std::conj(v[i]) * h(i, j);
      s *= scale;
      for (std::size_t i = k + 1; i < 4; ++i) h(i, j) -= v[i] * s;
    }
    // H <- H P
    for (std::size_t i = 0; i < 4; ++i) {
      cplx s = 0.0;
      for (std::size_t j = k + 1; j < 4; ++j) s += h(i, j) * v[j];
      s *= scale;
      for (std::size_t j = k + 1; j < 4; ++j) h(i, j) -= s * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < 4; ++i) h(i, k) = 0.0;
  }
}

// Eigenvalue of [[a, b], [c, d]] closest to d.
cplx wilkinson_shift(cplx a, cplx b, cplx c, cplx d) {
  const cplx half_tr = 0.5 * (a + d);
  const cplx half_gap = 0.5 * (a - d);
  // tr^2/4 - det written without the cancellation that hides close eigenvalues
  const cplx disc = std::sqrt(half_gap * half_gap + b * c);
  const cplx l1 = half_tr + disc;
  const cplx l2 = half_tr - disc;
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

struct Rotation {
  double c = 1.0;
  cplx s = 0.0;
};

// G = [[c, s], [-conj(s), c]] with G [x; y] = [r; 0].
Rotation givens(cplx x, cplx y) {
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  if (ay == 0.0) return {};
  if (ax == 0.0) return {0.0, std::conj(y) / ay};
  const double r = std::hypot(ax, ay);
  return {ax / r, (x / ax) * std::conj(y) / r};
}

}  // namespace

std::array<cplx, 4> eig4(const ComplexMatrix4& m) {
  if (!all_finite(m)) throw PreconditionError("eig4: non-finite matrix entry");

  ComplexMatrix4 h = m;
  reduce_to_hessenberg(h);

  const double eps = std::numeric_limits<double>::epsilon();
  const double norm = std::max(frobenius(m), std::numeric_limits<double>::min());
  std::array<cplx, 4> out{};
  int hi = 3;
  int iter = 0;
  std::array<Rotation, 3> rot{};

  while (hi >= 0) {
    if (hi == 0) {
      out[0] = h(0, 0);
      break;
    }
    int lo = hi;
    for (; lo > 0; --lo) {
      const double sub = std::abs(h(lo, lo - 1));
      double diag = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (diag == 0.0) diag = norm;
      // relative test keeps small eigenvalues accurate; the absolute one (still
      // within backward error) stops tiny diagonals from stalling deflation
      if (sub <= eps * diag || sub <= eps * norm) {
        h(lo, lo - 1) = 0.0;
        break;
      }
    }
    if (lo == hi) {
      out[hi] = h(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > kMaxIterationsPerEigenvalue)
      throw ConvergenceError("eig4: QR iteration did not converge");

    cplx mu;
    if (iter % 11 == 0) {
      // exceptional shift breaks rare cycles
      mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
    } else {
      mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    }

    for (int i = lo; i <= hi; ++i) h(i, i) -= mu;
    // H - mu I = Q R
    for (int k = lo; k < hi; ++k) {
      const Rotation g = givens(h(k, k), h(k + 1, k));
      rot[k] = g;
      for (int j = k; j <= hi; ++j) {
        const cplx x = h(k, j);
        const cplx y = h(k + 1, j);
        h(k, j) = g.c * x + g.s * y;
        h(k + 1, j) = -std::conj(g.s) * x + g.c * y;
      }
    }
    // R Q
    for (int k = lo; k < hi; ++k) {
      const Rotation g = rot[k];
      const int last = std::min(k + 2, hi);
      for (int i = lo; i <= last; ++i) {
        const cplx x = h(i, k);
        const cplx y = h(i, k + 1);
        h(i, k) = g.c * x + std::conj(g.s) * y;
        h(i, k + 1) = -g.s * x + g.c * y;
      }
    }
    for (int i = lo; i <= hi; ++i) h(i, i) += mu;
  }
  return out;
}

}  // namespace entrec

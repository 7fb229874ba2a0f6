#pragma once

// Small dense complex matrices in the two-qubit basis {HH, HV, VH, VV}.

#include <array>
#include <complex>
#include <cstddef>

namespace entrec {

using cplx = std::complex<double>;

struct ComplexMatrix2 {
  std::array<cplx, 4> e{};  // row-major

  cplx& operator()(std::size_t r, std::size_t c) { return e[2 * r + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return e[2 * r + c]; }

  static ComplexMatrix2 identity();
  static ComplexMatrix2 diag(cplx a, cplx b);
  bool operator==(const ComplexMatrix2&) const = default;
};

struct ComplexMatrix4 {
  std::array<cplx, 16> e{};  // row-major

  cplx& operator()(std::size_t r, std::size_t c) { return e[4 * r + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return e[4 * r + c]; }

  static ComplexMatrix4 identity();
  static ComplexMatrix4 diag(cplx a, cplx b, cplx c, cplx d);
  bool operator==(const ComplexMatrix4&) const = default;
};

namespace pauli {
ComplexMatrix2 x();
ComplexMatrix2 y();
ComplexMatrix2 z();
}  // namespace pauli

ComplexMatrix2 matmul2(const ComplexMatrix2& a, const ComplexMatrix2& b);
ComplexMatrix2 adjoint2(const ComplexMatrix2& a);

ComplexMatrix4 kron2(const ComplexMatrix2& a, const ComplexMatrix2& b);
ComplexMatrix4 matmul4(const ComplexMatrix4& a, const ComplexMatrix4& b);
ComplexMatrix4 adjoint4(const ComplexMatrix4& a);
ComplexMatrix4 conj4(const ComplexMatrix4& a);
cplx trace4(const ComplexMatrix4& a);

ComplexMatrix4 operator+(const ComplexMatrix4& a, const ComplexMatrix4& b);
ComplexMatrix4 operator-(const ComplexMatrix4& a, const ComplexMatrix4& b);
ComplexMatrix4 operator*(cplx s, const ComplexMatrix4& a);

/// Largest entry modulus.
double max_abs(const ComplexMatrix4& a);
/// Frobenius norm.
double frobenius(const ComplexMatrix4& a);
bool all_finite(const ComplexMatrix4& a);

/// Eigenvalues of a general complex 4x4 matrix, in no particular order.
///
/// Householder reduction to upper Hessenberg form followed by single-shift
/// complex QR with Wilkinson shifts and deflation. Throws ConvergenceError if
/// an eigenvalue fails to deflate within the iteration cap, PreconditionError
/// on non-finite input.
std::array<cplx, 4> eig4(const ComplexMatrix4& m);

}  // namespace entrec

#include "entrec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "entrec/errors.hpp"

namespace entrec::oracle {

void QuadratureGrid::validate() const {
  if (points < 1025 || points % 2 == 0) throw PreconditionError("quadrature grid: points must be odd and >= 1025");
  if (!(span >= 6.0)) throw PreconditionError("quadrature grid: span must be >= 6");
}

double max_resolved_delay_sigma(const QuadratureGrid& g) { return 0.1 * g.points / g.span; }

namespace {

void require_resolved(double dalpha, const Spectrum& sp, const QuadratureGrid& g) {
  const double x = std::abs(dalpha) * sp.sigma();
  if (x * g.span / g.points > 0.1)
    throw ResolutionError("quadrature grid under-resolves delay*sigma = " + std::to_string(x));
}

struct Nodes {
  std::vector<double> omega;
  std::vector<double> weight;  // trapezoid weight times f(omega)
};

Nodes make_nodes(const Spectrum& sp, const QuadratureGrid& g) {
  Nodes n;
  n.omega.resize(g.points);
  n.weight.resize(g.points);
  const double h = g.step_in_sigma() * sp.sigma();
  for (int i = 0; i < g.points; ++i) {
    const double w = sp.omega0() + (-g.span * sp.sigma() + i * h);
    const double end = (i == 0 || i == g.points - 1) ? 0.5 : 1.0;
    n.omega[i] = w;
    n.weight[i] = end * h * sp.density(w);
  }
  return n;
}

using Upper = std::array<cplx, 10>;  // (0,0) (0,1) (0,2) (0,3) (1,1) (1,2) (1,3) (2,2) (2,3) (3,3)

struct Prepared {
  Nodes na, nb;
  std::vector<std::size_t> pol;  // basis index per term
  std::vector<cplx> amp;
  std::vector<cplx> phase_a;  // term-major, points per term
  std::vector<cplx> phase_b;
  std::size_t points = 0;
};

Prepared prepare(const BiphotonState& s, const Spectrum& sp_a, const Spectrum& sp_b, const QuadratureGrid& g) {
  g.validate();
  if (!fully_recombined(s)) throw PreconditionError("numeric_reduce: state still has a split arm");
  const auto terms = s.terms();
  for (const auto& m : terms)
    for (const auto& n : terms) {
      require_resolved(m.delay_a - n.delay_a, sp_a, g);
      require_resolved(m.delay_b - n.delay_b, sp_b, g);
    }
  Prepared p;
  p.na = make_nodes(sp_a, g);
  p.nb = make_nodes(sp_b, g);
  p.points = static_cast<std::size_t>(g.points);
  p.phase_a.resize(terms.size() * p.points);
  p.phase_b.resize(terms.size() * p.points);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    p.pol.push_back(basis_index(terms[t].pol_a, terms[t].pol_b));
    p.amp.push_back(terms[t].amp);
    for (std::size_t i = 0; i < p.points; ++i) {
      p.phase_a[t * p.points + i] = std::polar(1.0, terms[t].delay_a * p.na.omega[i]);
      p.phase_b[t * p.points + i] = std::polar(1.0, terms[t].delay_b * p.nb.omega[i]);
    }
  }
  return p;
}

// Inner quadrature over w_b for one w_a node.
Upper row_kernel(const Prepared& p, std::size_t i) {
  const std::size_t nt = p.amp.size();
  std::vector<cplx> c(nt);
  for (std::size_t t = 0; t < nt; ++t) c[t] = p.amp[t] * p.phase_a[t * p.points + i];
  Upper acc{};
  for (std::size_t j = 0; j < p.points; ++j) {
    std::array<cplx, 4> psi{};
    for (std::size_t t = 0; t < nt; ++t) psi[p.pol[t]] += c[t] * p.phase_b[t * p.points + j];
    const double w = p.nb.weight[j];
    std::size_t k = 0;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t q = r; q < 4; ++q) acc[k++] += w * psi[r] * std::conj(psi[q]);
  }
  for (auto& z : acc) z *= p.na.weight[i];
  return acc;
}

Reduced finish(const std::vector<Upper>& rows) {
  Upper total{};
  for (const auto& r : rows)
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += r[k];
  ComplexMatrix4 acc;
  std::size_t k = 0;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t q = r; q < 4; ++q) acc(r, q) = total[k++];
  double trace = 0.0;
  for (std::size_t i = 0; i < 4; ++i) trace += acc(i, i).real();
  if (!(trace >= 1e-14)) throw PostSelectionError("numeric_reduce: every amplitude was post-selected away");
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

}  // namespace

cplx numeric_characteristic(double dalpha, const Spectrum& sp, const QuadratureGrid& g) {
  g.validate();
  require_resolved(dalpha, sp, g);
  const Nodes n = make_nodes(sp, g);
  cplx sum = 0.0;
  for (std::size_t i = 0; i < n.omega.size(); ++i) sum += n.weight[i] * std::polar(1.0, dalpha * n.omega[i]);
  return sum;
}

Reduced numeric_reduce_serial(const BiphotonState& s, const Spectrum& sp_a, const Spectrum& sp_b,
                              const QuadratureGrid& g) {
  const Prepared p = prepare(s, sp_a, sp_b, g);
  std::vector<Upper> rows(p.points);
  for (std::size_t i = 0; i < p.points; ++i) rows[i] = row_kernel(p, i);
  return finish(rows);
}

Reduced numeric_reduce(const BiphotonState& s, const Spectrum& sp_a, const Spectrum& sp_b, const QuadratureGrid& g) {
  const Prepared p = prepare(s, sp_a, sp_b, g);
  std::vector<Upper> rows(p.points);
  const auto n = static_cast<std::ptrdiff_t>(p.points);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) rows[i] = row_kernel(p, static_cast<std::size_t>(i));
  return finish(rows);
}

}  // namespace entrec::oracle

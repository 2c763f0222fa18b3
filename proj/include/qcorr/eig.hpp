#pragma once

// Cyclic Jacobi eigendecomposition for Hermitian matrices up to 8x8.
// Deterministic: fixed sweep order, eigenvalues sorted descending, each
// eigenvector scaled so its first nonzero component is real and positive.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "qcorr/complex_matrix.hpp"

namespace qcorr {

struct HermitianSpectrum {
  int dim = 0;
  std::array<double, ComplexMatrix::kMaxDim> values{};  // descending
  ComplexMatrix vectors;                                // eigenvectors in columns

  ComplexMatrix reconstruct() const {
    ComplexMatrix r(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        cdouble s = 0.0;
        for (int k = 0; k < dim; ++k)
          s += values[k] * vectors(i, k) * std::conj(vectors(j, k));
        r(i, j) = s;
      }
    return r;
  }
};

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace detail

inline HermitianSpectrum hermitian_eig(const ComplexMatrix& input) {
  if (hermiticity_defect(input) > 1e-10)
    throw std::invalid_argument("hermitian_eig: input is not Hermitian within 1e-10");

  const int n = input.dim();
  ComplexMatrix a = input;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double tol = 1e-14 * std::max(1.0, frobenius_norm(input));

  bool converged = false;
  for (int sweep = 0; sweep < 64; ++sweep) {
    if (detail::off_diagonal_norm(a) <= tol) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const cdouble g = a(p, q);
        const double ag = std::abs(g);
        if (ag == 0.0) continue;
        const cdouble phase = g / ag;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * ag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const cdouble sc = t * c * phase;

        for (int r = 0; r < n; ++r) {  // columns p,q
          const cdouble ap = a(r, p), aq = a(r, q);
          a(r, p) = c * ap - std::conj(sc) * aq;
          a(r, q) = sc * ap + c * aq;
        }
        for (int r = 0; r < n; ++r) {  // rows p,q
          const cdouble ap = a(p, r), aq = a(q, r);
          a(p, r) = c * ap - sc * aq;
          a(q, r) = std::conj(sc) * ap + c * aq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          const cdouble vp = v(r, p), vq = v(r, q);
          v(r, p) = c * vp - std::conj(sc) * vq;
          v(r, q) = sc * vp + c * vq;
        }
      }
  }
  if (!converged && detail::off_diagonal_norm(a) > tol)
    throw std::runtime_error("hermitian_eig: Jacobi sweeps did not converge");

  std::array<int, ComplexMatrix::kMaxDim> order{};
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.begin() + n,
            [&](int x, int y) { return a(x, x).real() > a(y, y).real(); });

  HermitianSpectrum s;
  s.dim = n;
  s.vectors = ComplexMatrix(n);
  for (int k = 0; k < n; ++k) {
    const int src = order[k];
    s.values[k] = a(src, src).real();
    cdouble scale = 1.0;
    for (int r = 0; r < n; ++r)
      if (std::abs(v(r, src)) > 1e-10) {
        scale = std::conj(v(r, src)) / std::abs(v(r, src));
        break;
      }
    for (int r = 0; r < n; ++r) s.vectors(r, k) = v(r, src) * scale;
  }
  return s;
}

// Base-2 von Neumann entropy; eigenvalues at or below 1e-12 contribute zero.
inline double von_neumann_entropy(const HermitianSpectrum& s) {
  double h = 0.0;
  for (int i = 0; i < s.dim; ++i)
    if (s.values[i] > 1e-12) h -= s.values[i] * std::log2(s.values[i]);
  return h;
}

inline double von_neumann_entropy(const ComplexMatrix& rho) {
  return von_neumann_entropy(hermitian_eig(rho));
}

}  // namespace qcorr

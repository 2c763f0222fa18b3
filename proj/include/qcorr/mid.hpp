#pragma once

// Measurement-induced disturbance for the 4|2 split of a three-qubit state:
// party a holds qubits 1 and 2, party b holds qubit 3. The measurement is the
// complete projective one in the eigenbases of the two marginals, and the
// figure of merit is the mutual information lost when the state is dephased
// in that product basis.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qcorr/density.hpp"
#include "qcorr/eig.hpp"

namespace qcorr {

struct ProjectorSet {
  Party party = Party::a;
  std::vector<ComplexMatrix> projectors;  // 4 rank-1 4x4 for party a, 2 rank-1 2x2 for b
};

namespace detail {

inline ComplexMatrix rank1(const std::vector<cdouble>& v) {
  const int d = static_cast<int>(v.size());
  ComplexMatrix p(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p(i, j) = v[i] * std::conj(v[j]);
  return p;
}

// Eigenbasis of a marginal, with degenerate eigenspaces re-spanned by the
// projections of the computational basis (lowest index first). Without this
// the basis inside a degenerate block is an arbitrary rotation that depends
// on rounding, and quantities that should be continuous in kt jump around at
// points where eigenvalues cross or a marginal is maximally mixed.
inline std::vector<std::vector<cdouble>> measurement_basis(const ComplexMatrix& marginal) {
  const HermitianSpectrum es = hermitian_eig(marginal);
  const int d = es.dim;
  std::vector<std::vector<cdouble>> basis;

  int start = 0;
  while (start < d) {
    int stop = start + 1;
    while (stop < d && std::abs(es.values[stop] - es.values[stop - 1]) <= 1e-10) ++stop;
    const int g = stop - start;

    ComplexMatrix q(d);  // projector onto this eigenspace
    for (int k = start; k < stop; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) q(i, j) += es.vectors(i, k) * std::conj(es.vectors(j, k));

    std::vector<std::vector<cdouble>> accepted;
    // Candidates: computational axes first, the raw eigenvectors as a
    // fallback so the span is always completed.
    for (int cand = 0; cand < d + g && static_cast<int>(accepted.size()) < g; ++cand) {
      std::vector<cdouble> u(d, 0.0);
      if (cand < d) {
        for (int i = 0; i < d; ++i) u[i] = q(i, cand);
      } else {
        for (int i = 0; i < d; ++i) u[i] = es.vectors(i, start + (cand - d));
      }
      for (const auto& w : accepted) {
        cdouble ov = 0.0;
        for (int i = 0; i < d; ++i) ov += std::conj(w[i]) * u[i];
        for (int i = 0; i < d; ++i) u[i] -= ov * w[i];
      }
      double nrm = 0.0;
      for (int i = 0; i < d; ++i) nrm += std::norm(u[i]);
      nrm = std::sqrt(nrm);
      if (nrm <= 1e-8) continue;
      cdouble phase = 1.0;
      for (int i = 0; i < d; ++i) {
        if (std::abs(u[i]) > 1e-10) {
          phase = std::conj(u[i]) / std::abs(u[i]);
          break;
        }
      }
      for (int i = 0; i < d; ++i) u[i] *= phase / nrm;
      accepted.push_back(std::move(u));
    }
    if (static_cast<int>(accepted.size()) != g)
      throw std::runtime_error("measurement basis: failed to span a degenerate eigenspace");
    for (auto& v : accepted) basis.push_back(std::move(v));
    start = stop;
  }
  return basis;
}

inline void require_projector_set(const ProjectorSet& s, Party party) {
  const int d = party == Party::a ? 4 : 2;
  if (s.party != party || static_cast<int>(s.projectors.size()) != d)
    throw std::invalid_argument("dephase: projector set has the wrong party or count");
  ComplexMatrix sum(d);
  for (const auto& p : s.projectors) {
    if (p.dim() != d) throw std::invalid_argument("dephase: projector dimension mismatch");
    sum += p;
  }
  if (max_abs_diff(sum, ComplexMatrix::identity(d)) > 1e-10)
    throw std::invalid_argument("dephase: projector set is not complete");
  for (size_t m = 0; m < s.projectors.size(); ++m)
    for (size_t l = m; l < s.projectors.size(); ++l) {
      const ComplexMatrix prod = s.projectors[m] * s.projectors[l];
      const ComplexMatrix want = m == l ? s.projectors[m] : ComplexMatrix(d);
      if (max_abs_diff(prod, want) > 1e-10)
        throw std::invalid_argument("dephase: projector set is not orthogonal");
    }
}

}  // namespace detail

// Rank-1 projectors onto the eigenbasis of one party's marginal, ordered by
// descending eigenvalue and tie-broken toward the computational basis.
inline ProjectorSet marginal_projectors(const DensityMatrix& marginal, Party party) {
  const int want = party == Party::a ? 4 : 2;
  if (marginal.dim() != want)
    throw std::invalid_argument("marginal_projectors: marginal dimension does not match party");
  ProjectorSet s;
  s.party = party;
  for (const auto& v : detail::measurement_basis(marginal.matrix()))
    s.projectors.push_back(detail::rank1(v));
  return s;
}

// Full dephasing map: sum over the 8 product projectors of P rho P. Kept as
// literal projector sandwiches so it stays valid for any complete orthogonal
// product sets, eigen-derived or rotated.
inline DensityMatrix dephase(const DensityMatrix& rho, const ProjectorSet& set_a,
                             const ProjectorSet& set_b) {
  detail::require_projector_set(set_a, Party::a);
  detail::require_projector_set(set_b, Party::b);
  ComplexMatrix out(8);
  for (const auto& pa : set_a.projectors) {
    for (const auto& pb : set_b.projectors) {
      const ComplexMatrix p = kron(pa, pb);
      out += p * rho.matrix() * p;
    }
  }
  return DensityMatrix(out);
}

// One party's dephasing applied to its own marginal.
inline DensityMatrix dephase_marginal(const DensityMatrix& marginal, const ProjectorSet& set) {
  detail::require_projector_set(set, set.party);
  ComplexMatrix out(marginal.dim());
  for (const auto& p : set.projectors) out += p * marginal.matrix() * p;
  return DensityMatrix(out);
}

inline double mutual_information(const DensityMatrix& rho) {
  const double sa = von_neumann_entropy(partial_trace(rho.matrix(), Party::a));
  const double sb = von_neumann_entropy(partial_trace(rho.matrix(), Party::b));
  return sa + sb - von_neumann_entropy(rho);
}

struct MidResult {
  double kt = 0.0;
  double mutual_information = 0.0;            // I(rho)
  double classical_mutual_information = 0.0;  // I after dephasing
  double mid = 0.0;                           // difference of the two above
  double s_rho = 0.0;
  double s_pi_rho = 0.0;
  double s_a = 0.0;
  double s_b = 0.0;
  double s_pi_a = 0.0;
  double s_pi_b = 0.0;
};

// The disturbance is evaluated as the full four-term bracket
//   S(dephased) - S(rho) + [S_a - S(dephased)_a] + [S_b - S(dephased)_b]
// with the marginal terms actually computed, never assumed to cancel.
inline MidResult mid(const DensityMatrix& rho, double kt = 0.0) {
  const DensityMatrix rho_a = partial_trace(rho, Party::a);
  const DensityMatrix rho_b = partial_trace(rho, Party::b);
  const ProjectorSet set_a = marginal_projectors(rho_a, Party::a);
  const ProjectorSet set_b = marginal_projectors(rho_b, Party::b);
  const DensityMatrix pi = dephase(rho, set_a, set_b);

  MidResult r;
  r.kt = kt;
  r.s_rho = von_neumann_entropy(rho);
  r.s_pi_rho = von_neumann_entropy(pi);
  r.s_a = von_neumann_entropy(rho_a);
  r.s_b = von_neumann_entropy(rho_b);
  r.s_pi_a = von_neumann_entropy(partial_trace(pi.matrix(), Party::a));
  r.s_pi_b = von_neumann_entropy(partial_trace(pi.matrix(), Party::b));
  r.mutual_information = r.s_a + r.s_b - r.s_rho;
  r.classical_mutual_information = r.s_pi_a + r.s_pi_b - r.s_pi_rho;
  r.mid = (r.s_pi_rho - r.s_rho) + (r.s_a - r.s_pi_a) + (r.s_b - r.s_pi_b);
  return r;
}

}  // namespace qcorr

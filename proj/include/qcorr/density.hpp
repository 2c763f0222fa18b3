#pragma once

// Validated density matrix wrapper. Construction checks finiteness,
// Hermiticity, unit trace and positive semidefiniteness, so downstream code
// can assume a physical state.

#include <stdexcept>
#include <string>

#include "qcorr/complex_matrix.hpp"
#include "qcorr/eig.hpp"

namespace qcorr {

class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    require_finite(m_, "density matrix");
    const double herm = hermiticity_defect(m_);
    if (herm > 1e-12)
      throw std::invalid_argument("density matrix: Hermiticity defect " +
                                  std::to_string(herm) + " exceeds 1e-12");
    const double tr_err = std::abs(trace(m_) - cdouble{1.0, 0.0});
    if (tr_err > 1e-12)
      throw std::invalid_argument("density matrix: trace deviates from 1 by " +
                                  std::to_string(tr_err));
    const HermitianSpectrum s = hermitian_eig(m_);
    for (int i = 0; i < s.dim; ++i)
      if (s.values[i] < -1e-10)
        throw std::invalid_argument("density matrix: negative eigenvalue " +
                                    std::to_string(s.values[i]));
  }

  int dim() const { return m_.dim(); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

inline double von_neumann_entropy(const DensityMatrix& rho) {
  return von_neumann_entropy(rho.matrix());
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, Party keep) {
  return DensityMatrix(partial_trace(rho.matrix(), keep));
}

}  // namespace qcorr

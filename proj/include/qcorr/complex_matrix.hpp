#pragma once

// Small dense complex matrices for three-qubit work. Dimensions are 2, 4 or 8,
// so everything lives on the stack and loops are written plainly.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qcorr {

using cdouble = std::complex<double>;

class ComplexMatrix {
 public:
  static constexpr int kMaxDim = 8;

  ComplexMatrix() : dim_(2) {}
  explicit ComplexMatrix(int dim) : dim_(dim) { require_dim(dim); }

  static ComplexMatrix identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  int dim() const { return dim_; }

  cdouble& operator()(int i, int j) { return m_[static_cast<size_t>(i) * kMaxDim + j]; }
  const cdouble& operator()(int i, int j) const {
    return m_[static_cast<size_t>(i) * kMaxDim + j];
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) (*this)(i, j) += o(i, j);
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) (*this)(i, j) -= o(i, j);
    return *this;
  }
  ComplexMatrix& operator*=(cdouble c) {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) (*this)(i, j) *= c;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(cdouble c, ComplexMatrix a) { return a *= c; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.dim_);
    for (int i = 0; i < a.dim_; ++i)
      for (int k = 0; k < a.dim_; ++k) {
        const cdouble aik = a(i, k);
        if (aik == cdouble{}) continue;
        for (int j = 0; j < a.dim_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

 private:
  static void require_dim(int dim) {
    if (dim != 2 && dim != 4 && dim != 8)
      throw std::invalid_argument("matrix dimension must be 2, 4 or 8, got " +
                                  std::to_string(dim));
  }

  int dim_;
  std::array<cdouble, kMaxDim * kMaxDim> m_{};
};

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b; }

inline ComplexMatrix dagger(const ComplexMatrix& a) {
  ComplexMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = std::conj(a(j, i));
  return r;
}

inline cdouble trace(const ComplexMatrix& a) {
  cdouble t = 0.0;
  for (int i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

inline double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline double hermiticity_defect(const ComplexMatrix& a) {
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

// Throws naming the first non-finite entry, if any.
inline void require_finite(const ComplexMatrix& a, const char* what) {
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      const cdouble v = a(i, j);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::invalid_argument(std::string(what) + ": non-finite entry at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
    }
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() * b.dim() > ComplexMatrix::kMaxDim)
    throw std::invalid_argument("kron: product dimension exceeds 8");
  ComplexMatrix r(a.dim() * b.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      const cdouble aij = a(i, j);
      for (int k = 0; k < b.dim(); ++k)
        for (int l = 0; l < b.dim(); ++l)
          r(i * b.dim() + k, j * b.dim() + l) = aij * b(k, l);
    }
  return r;
}

// Fixed bipartition of |q1 q2 q3>: party a = qubits 1,2 (most significant),
// party b = qubit 3 (least significant).
enum class Party { a, b };

inline ComplexMatrix partial_trace(const ComplexMatrix& rho, Party keep) {
  if (rho.dim() != 8) throw std::invalid_argument("partial_trace expects an 8x8 matrix");
  if (keep == Party::a) {
    ComplexMatrix r(4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
    return r;
  }
  ComplexMatrix r(2);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      cdouble s = 0.0;
      for (int i = 0; i < 4; ++i) s += rho(2 * i + k, 2 * i + l);
      r(k, l) = s;
    }
  return r;
}

}  // namespace qcorr

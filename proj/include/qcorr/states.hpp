#pragma once

// Three-qubit input states. Basis is |q1 q2 q3> with q1 the most significant
// bit, so index 0 is |000> and index 7 is |111>.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qcorr/density.hpp"

namespace qcorr {

using StateVector = std::array<cdouble, 8>;

enum class StateKind { Ghz, W };

inline StateVector ghz() {
  StateVector v{};
  v[0] = 1.0 / std::sqrt(2.0);
  v[7] = v[0];
  return v;
}

// Superposition of |100>, |010>, |001> with weights 1, sqrt(n) e^{i gamma},
// sqrt(n+1) e^{i delta}, normalized by sqrt(2 + 2n).
inline StateVector w_n(double n, double gamma, double delta) {
  if (!(n >= 0.0))
    throw std::invalid_argument("w_n: n must be nonnegative, got " + std::to_string(n));
  const double norm = std::sqrt(2.0 + 2.0 * n);
  StateVector v{};
  v[4] = 1.0 / norm;
  v[2] = std::sqrt(n) * std::exp(cdouble{0.0, gamma}) / norm;
  v[1] = std::sqrt(n + 1.0) * std::exp(cdouble{0.0, delta}) / norm;
  return v;
}

inline StateVector initial_state(StateKind kind) {
  return kind == StateKind::Ghz ? ghz() : w_n(1, 0.0, 0.0);
}

inline DensityMatrix density_of(const StateVector& v) {
  double norm2 = 0.0;
  for (const cdouble& c : v) norm2 += std::norm(c);
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
    throw std::invalid_argument("density_of: state vector norm deviates from 1 by " +
                                std::to_string(std::abs(std::sqrt(norm2) - 1.0)));
  ComplexMatrix m(8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) m(i, j) = v[i] * std::conj(v[j]);
  return DensityMatrix(m);
}

}  // namespace qcorr

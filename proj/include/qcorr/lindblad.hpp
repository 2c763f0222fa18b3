#pragma once

// Direct numeric integration of the master equation
//   drho/dt = kappa * sum_j (L_j rho L_j - rho)
// with every jump operator L_j a single-qubit Pauli, so each L_j rho L_j is a
// cheap index shuffle with signs rather than a matrix product. This route is
// deliberately independent of the closed forms in channels.hpp; tests compare
// the two.

#include <cmath>
#include <stdexcept>
#include <string>

#include "qcorr/channels.hpp"
#include "qcorr/density.hpp"
#include "qcorr/states.hpp"

namespace qcorr {
namespace detail {

// Accumulates sigma rho sigma for a Pauli of the given axis (0=x, 1=y, 2=z)
// acting on the qubit that owns bit m of the basis index. X swaps the bit on
// both indices, Z contributes a relative sign when the bits disagree, and Y
// does both at once.
inline void add_pauli_sandwich(const ComplexMatrix& rho, int axis, int m, ComplexMatrix& acc) {
  const int mask = 1 << m;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const bool same_bit = ((i >> m) & 1) == ((j >> m) & 1);
      switch (axis) {
        case 0:
          acc(i, j) += rho(i ^ mask, j ^ mask);
          break;
        case 1:
          acc(i, j) += (same_bit ? 1.0 : -1.0) * rho(i ^ mask, j ^ mask);
          break;
        default:
          acc(i, j) += (same_bit ? 1.0 : -1.0) * rho(i, j);
          break;
      }
    }
  }
}

inline ComplexMatrix lindblad_derivative(const ComplexMatrix& rho, NoiseKind noise, double kappa) {
  ComplexMatrix acc(8);
  int jumps = 0;
  for (int m = 0; m < 3; ++m) {
    if (noise == NoiseKind::Isotropic) {
      for (int axis = 0; axis < 3; ++axis) add_pauli_sandwich(rho, axis, m, acc);
      jumps += 3;
    } else {
      const int axis = noise == NoiseKind::PauliX ? 0 : noise == NoiseKind::PauliY ? 1 : 2;
      add_pauli_sandwich(rho, axis, m, acc);
      jumps += 1;
    }
  }
  ComplexMatrix out = rho;
  out *= -static_cast<double>(jumps);
  out += acc;
  out *= kappa;
  return out;
}

inline void symmetrize(ComplexMatrix& m) {
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = i; j < m.dim(); ++j) {
      const cdouble v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
}

inline void rk4_step(ComplexMatrix& rho, NoiseKind noise, double kappa, double h) {
  const ComplexMatrix k1 = lindblad_derivative(rho, noise, kappa);
  ComplexMatrix tmp = k1;
  tmp *= 0.5 * h;
  tmp += rho;
  const ComplexMatrix k2 = lindblad_derivative(tmp, noise, kappa);
  tmp = k2;
  tmp *= 0.5 * h;
  tmp += rho;
  const ComplexMatrix k3 = lindblad_derivative(tmp, noise, kappa);
  tmp = k3;
  tmp *= h;
  tmp += rho;
  const ComplexMatrix k4 = lindblad_derivative(tmp, noise, kappa);

  ComplexMatrix incr = k1;
  ComplexMatrix two_k2 = k2;
  two_k2 *= 2.0;
  ComplexMatrix two_k3 = k3;
  two_k3 *= 2.0;
  incr += two_k2;
  incr += two_k3;
  incr += k4;
  incr *= h / 6.0;
  rho += incr;
  symmetrize(rho);
}

}  // namespace detail

// Integrates the master equation from the named pure initial state for a
// physical time t. Step size dt must resolve the fastest decay scale, hence
// the cap at 1e-3 / kappa; the budget leaves RK4 truncation error far below
// the comparison tolerances used in the tests.
inline DensityMatrix evolve_lindblad_numeric(StateKind state, NoiseKind noise, double kappa,
                                             double t, double dt) {
  if (!std::isfinite(kappa) || kappa <= 0.0)
    throw std::invalid_argument("lindblad: kappa must be finite and positive, got " +
                                std::to_string(kappa));
  if (!std::isfinite(t) || t < 0.0)
    throw std::invalid_argument("lindblad: time must be finite and nonnegative, got " +
                                std::to_string(t));
  if (!std::isfinite(dt) || dt <= 0.0 || dt > 1e-3 / kappa)
    throw std::invalid_argument("lindblad: dt must lie in (0, 1e-3/kappa], got " +
                                std::to_string(dt));

  ComplexMatrix rho = density_of(initial_state(state)).matrix();
  const long long full_steps = static_cast<long long>(std::floor(t / dt));
  double advanced = 0.0;
  for (long long s = 0; s < full_steps; ++s) {
    detail::rk4_step(rho, noise, kappa, dt);
    advanced += dt;
  }
  const double rest = t - advanced;
  if (rest > 1e-15 * (1.0 + t)) detail::rk4_step(rho, noise, kappa, rest);

  const double drift = std::abs(trace(rho).real() - 1.0) + std::abs(trace(rho).imag());
  if (drift > 1e-9)
    throw std::runtime_error("lindblad: trace drifted by " + std::to_string(drift) +
                             " which exceeds the 1e-9 budget");
  return DensityMatrix(rho);
}

}  // namespace qcorr

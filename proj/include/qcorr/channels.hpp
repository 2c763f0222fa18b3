#pragma once

// Closed-form states of the GHZ and W inputs after a time kappa*t under
// single-axis Pauli dephasing noise or isotropic noise, each qubit coupled
// independently with equal rate. The exponential decay rates follow from the
// jump operators: a single-axis channel damps the two complementary Pauli
// components of each qubit at 2*kappa, the isotropic channel damps every
// non-identity component at 4*kappa.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcorr/density.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

enum class NoiseKind { PauliX, PauliY, PauliZ, Isotropic };

struct ChannelPoint {
  StateKind state;
  NoiseKind noise;
  double kt;  // dimensionless kappa * t
};

inline const char* to_string(StateKind s) { return s == StateKind::Ghz ? "ghz" : "w"; }

inline const char* to_string(NoiseKind n) {
  switch (n) {
    case NoiseKind::PauliX: return "x";
    case NoiseKind::PauliY: return "y";
    case NoiseKind::PauliZ: return "z";
    default: return "iso";
  }
}

enum class CoefficientTrend { NonIncreasing, NonDecreasing, NonMonotone };

struct Coefficient {
  const char* name;
  double value;
  CoefficientTrend trend;
  bool zero_at_start;  // exactly 0 at kt = 0
};

namespace detail {

inline void require_kt(double kt) {
  if (!std::isfinite(kt) || kt < 0.0)
    throw std::invalid_argument("channel time kt must be finite and nonnegative, got " +
                                std::to_string(kt));
}

struct GhzSingleAxis {  // shared by the X and Y channels
  double alpha_plus, alpha_minus;
};

inline GhzSingleAxis ghz_alphas(double kt) {
  const double e4 = std::exp(-4.0 * kt);
  return {1.0 + 3.0 * e4, 1.0 - e4};
}

struct GhzYExtra {
  double beta1, beta2;
};

inline GhzYExtra ghz_y_betas(double kt) {
  const double e2 = std::exp(-2.0 * kt), e6 = std::exp(-6.0 * kt);
  return {3.0 * e2 + e6, e2 - e6};
}

struct GhzIso {
  double alpha_plus, alpha_minus, gamma;
};

inline GhzIso ghz_iso_coeffs(double kt) {
  const double e8 = std::exp(-8.0 * kt), e12 = std::exp(-12.0 * kt);
  return {1.0 + 3.0 * e8, 1.0 - e8, 4.0 * e12};
}

struct WSingleAxis {  // shared by the X and Y channels
  double a1, a2, a3, a4, beta_plus, beta_minus;
};

inline WSingleAxis w_alphas(double kt) {
  const double e2 = std::exp(-2.0 * kt);
  const double e4 = std::exp(-4.0 * kt);
  const double e6 = std::exp(-6.0 * kt);
  return {1.0 + e2 + e4 + e6, 1.0 + e2 - e4 - e6, 1.0 - e2 - e4 + e6,
          1.0 - e2 + e4 - e6, 1.0 + e6, 1.0 - e6};
}

struct WIso {
  double a1, a2, a3, a4, beta_plus, beta_minus, gamma_plus, gamma_minus;
};

inline WIso w_iso_coeffs(double kt) {
  const double e4 = std::exp(-4.0 * kt);
  const double e8 = std::exp(-8.0 * kt);
  const double e12 = std::exp(-12.0 * kt);
  return {1.0 + e4 + e8 + e12, 1.0 + e4 - e8 - e12, 1.0 - e4 - e8 + e12,
          1.0 - e4 + e8 - e12, 1.0 + e12, 1.0 - e12, e8 + e12, e8 - e12};
}

inline ComplexMatrix ghz_x_matrix(double kt) {
  const auto [ap, am] = ghz_alphas(kt);
  ComplexMatrix r(8);
  r(0, 0) = r(7, 7) = r(0, 7) = r(7, 0) = ap / 8.0;
  for (int i = 1; i <= 6; ++i) {
    r(i, i) = am / 8.0;
    r(i, 7 - i) = am / 8.0;
  }
  return r;
}

inline ComplexMatrix ghz_y_matrix(double kt) {
  const auto [ap, am] = ghz_alphas(kt);
  const auto [b1, b2] = ghz_y_betas(kt);
  ComplexMatrix r(8);
  r(0, 0) = r(7, 7) = ap / 8.0;
  r(0, 7) = r(7, 0) = b1 / 8.0;
  for (int i = 1; i <= 6; ++i) {
    r(i, i) = am / 8.0;
    r(i, 7 - i) = -b2 / 8.0;
  }
  return r;
}

inline ComplexMatrix ghz_z_matrix(double kt) {
  const double e6 = std::exp(-6.0 * kt);
  ComplexMatrix r(8);
  r(0, 0) = r(7, 7) = 0.5;
  r(0, 7) = r(7, 0) = 0.5 * e6;
  return r;
}

inline ComplexMatrix ghz_iso_matrix(double kt) {
  const auto [ap, am, g] = ghz_iso_coeffs(kt);
  ComplexMatrix r(8);
  r(0, 0) = r(7, 7) = ap / 8.0;
  r(0, 7) = r(7, 0) = g / 8.0;
  for (int i = 1; i <= 6; ++i) r(i, i) = am / 8.0;
  return r;
}

inline void fill_symmetric(ComplexMatrix& r, int i, int j, double v) {
  r(i, j) = v;
  r(j, i) = v;
}

/// sign = +1 for the X channel, -1 for the Y channel: the Y evolution flips
// the coherences that connect the even- and odd-excitation sectors.
inline ComplexMatrix w_single_axis_matrix(double kt, double sign) {
  const auto c = w_alphas(kt);
  const double s2 = std::sqrt(2.0);
  ComplexMatrix r(8);
  r(0, 0) = 2.0 * c.a2 / 16.0;
  r(1, 1) = 2.0 * c.a1 / 16.0;
  r(2, 2) = r(4, 4) = 2.0 * c.beta_plus / 16.0;
  r(3, 3) = r(5, 5) = 2.0 * c.beta_minus / 16.0;
  r(6, 6) = 2.0 * c.a4 / 16.0;
  r(7, 7) = 2.0 * c.a3 / 16.0;
  fill_symmetric(r, 0, 3, sign * s2 * c.a2 / 16.0);
  fill_symmetric(r, 0, 5, sign * s2 * c.a2 / 16.0);
  fill_symmetric(r, 0, 6, sign * c.a2 / 16.0);
  fill_symmetric(r, 1, 2, s2 * c.a1 / 16.0);
  fill_symmetric(r, 1, 4, s2 * c.a1 / 16.0);
  fill_symmetric(r, 1, 7, sign * c.a3 / 16.0);
  fill_symmetric(r, 2, 4, c.a1 / 16.0);
  fill_symmetric(r, 2, 7, sign * s2 * c.a3 / 16.0);
  fill_symmetric(r, 3, 5, c.a4 / 16.0);
  fill_symmetric(r, 3, 6, s2 * c.a4 / 16.0);
  fill_symmetric(r, 4, 7, sign * s2 * c.a3 / 16.0);
  fill_symmetric(r, 5, 6, s2 * c.a4 / 16.0);
  return r;
}

inline ComplexMatrix w_z_matrix(double kt) {
  const double e4 = std::exp(-4.0 * kt);
  const double s2 = std::sqrt(2.0);
  ComplexMatrix r(8);
  r(1, 1) = 2.0 / 4.0;
  r(2, 2) = r(4, 4) = 1.0 / 4.0;
  fill_symmetric(r, 1, 2, s2 * e4 / 4.0);
  fill_symmetric(r, 1, 4, s2 * e4 / 4.0);
  fill_symmetric(r, 2, 4, e4 / 4.0);
  return r;
}

inline ComplexMatrix w_iso_matrix(double kt) {
  const auto c = w_iso_coeffs(kt);
  const double s2 = std::sqrt(2.0);
  ComplexMatrix r(8);
  r(0, 0) = c.a2 / 8.0;
  r(1, 1) = c.a1 / 8.0;
  r(2, 2) = r(4, 4) = c.beta_plus / 8.0;
  r(3, 3) = r(5, 5) = c.beta_minus / 8.0;
  r(6, 6) = c.a4 / 8.0;
  r(7, 7) = c.a3 / 8.0;
  fill_symmetric(r, 1, 2, s2 * c.gamma_plus / 8.0);
  fill_symmetric(r, 1, 4, s2 * c.gamma_plus / 8.0);
  fill_symmetric(r, 2, 4, c.gamma_plus / 8.0);
  fill_symmetric(r, 3, 5, c.gamma_minus / 8.0);
  fill_symmetric(r, 3, 6, s2 * c.gamma_minus / 8.0);
  fill_symmetric(r, 5, 6, s2 * c.gamma_minus / 8.0);
  return r;
}

}  // namespace detail

inline std::vector<Coefficient> coefficients(const ChannelPoint& p) {
  detail::require_kt(p.kt);
  using T = CoefficientTrend;
  std::vector<Coefficient> out;
  if (p.state == StateKind::Ghz) {
    switch (p.noise) {
      case NoiseKind::PauliX: {
        const auto c = detail::ghz_alphas(p.kt);
        out = {{"alpha_plus", c.alpha_plus, T::NonIncreasing, false},
               {"alpha_minus", c.alpha_minus, T::NonDecreasing, true}};
        break;
      }
      case NoiseKind::PauliY: {
        const auto c = detail::ghz_alphas(p.kt);
        const auto b = detail::ghz_y_betas(p.kt);
        out = {{"alpha_plus", c.alpha_plus, T::NonIncreasing, false},
               {"alpha_minus", c.alpha_minus, T::NonDecreasing, true},
               {"beta1", b.beta1, T::NonIncreasing, false},
               {"beta2", b.beta2, T::NonMonotone, true}};
        break;
      }
      case NoiseKind::PauliZ:
        out = {{"z", std::exp(-6.0 * p.kt), T::NonIncreasing, false}};
        break;
      case NoiseKind::Isotropic: {
        const auto c = detail::ghz_iso_coeffs(p.kt);
        out = {{"alpha_plus", c.alpha_plus, T::NonIncreasing, false},
               {"alpha_minus", c.alpha_minus, T::NonDecreasing, true},
               {"gamma", c.gamma, T::NonIncreasing, false}};
        break;
      }
    }
  } else {
    switch (p.noise) {
      case NoiseKind::PauliX:
      case NoiseKind::PauliY: {
        const auto c = detail::w_alphas(p.kt);
        out = {{"alpha1", c.a1, T::NonIncreasing, false},
               {"alpha2", c.a2, T::NonMonotone, true},
               {"alpha3", c.a3, T::NonDecreasing, true},
               {"alpha4", c.a4, T::NonDecreasing, true},
               {"beta_plus", c.beta_plus, T::NonIncreasing, false},
               {"beta_minus", c.beta_minus, T::NonDecreasing, true}};
        break;
      }
      case NoiseKind::PauliZ:
        out = {{"w", std::exp(-4.0 * p.kt), T::NonIncreasing, false}};
        break;
      case NoiseKind::Isotropic: {
        const auto c = detail::w_iso_coeffs(p.kt);
        out = {{"alpha1", c.a1, T::NonIncreasing, false},
               {"alpha2", c.a2, T::NonMonotone, true},
               {"alpha3", c.a3, T::NonDecreasing, true},
               {"alpha4", c.a4, T::NonDecreasing, true},
               {"beta_plus", c.beta_plus, T::NonIncreasing, false},
               {"beta_minus", c.beta_minus, T::NonDecreasing, true},
               {"gamma_plus", c.gamma_plus, T::NonIncreasing, false},
               {"gamma_minus", c.gamma_minus, T::NonMonotone, true}};
        break;
      }
    }
  }
  return out;
}

inline DensityMatrix evolve_analytic(const ChannelPoint& p) {
  detail::require_kt(p.kt);
  ComplexMatrix m(8);
  if (p.state == StateKind::Ghz) {
    switch (p.noise) {
      case NoiseKind::PauliX: m = detail::ghz_x_matrix(p.kt); break;
      case NoiseKind::PauliY: m = detail::ghz_y_matrix(p.kt); break;
      case NoiseKind::PauliZ: m = detail::ghz_z_matrix(p.kt); break;
      case NoiseKind::Isotropic: m = detail::ghz_iso_matrix(p.kt); break;
    }
  } else {
    switch (p.noise) {
      case NoiseKind::PauliX: m = detail::w_single_axis_matrix(p.kt, +1.0); break;
      case NoiseKind::PauliY: m = detail::w_single_axis_matrix(p.kt, -1.0); break;
      case NoiseKind::PauliZ: m = detail::w_z_matrix(p.kt); break;
      case NoiseKind::Isotropic: m = detail::w_iso_matrix(p.kt); break;
    }
  }
  return DensityMatrix(m);
}

}  // namespace qcorr

#pragma once

// Ameliorated measurement-induced disturbance: minimise the information loss
// of mid.hpp over all complete rank-1 product measurements instead of pinning
// the bases to the marginal eigenbases. Each qubit basis is the image of the
// computational one under a rotation
//   U = cos(psi) I + i sin(psi) (cos(theta) X + sin(theta) sin(phi) Y
//                                + sin(theta) cos(phi) Z)
// so nine angles parameterise the measurement. For rank-1 product projectors
// the dephased state is diagonal in the rotated basis, which lets the
// objective be evaluated from outcome probabilities alone; the explicit
// dephasing route in mid.hpp serves as a cross-check in the tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "qcorr/density.hpp"
#include "qcorr/eig.hpp"
#include "qcorr/mid.hpp"

namespace qcorr {

struct LocalUnitaryAngles {
  double psi = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

using AngleSet = std::array<LocalUnitaryAngles, 3>;  // one triple per qubit

inline ComplexMatrix local_unitary(const LocalUnitaryAngles& a) {
  const double nx = std::cos(a.theta);
  const double ny = std::sin(a.theta) * std::sin(a.phi);
  const double nz = std::sin(a.theta) * std::cos(a.phi);
  const double c = std::cos(a.psi), s = std::sin(a.psi);
  ComplexMatrix u(2);
  u(0, 0) = cdouble(c, s * nz);
  u(0, 1) = cdouble(s * ny, s * nx);
  u(1, 0) = cdouble(-s * ny, s * nx);
  u(1, 1) = cdouble(c, -s * nz);
  return u;
}

// Projector sets of the rotated product basis, for feeding into dephase().
// Party a gets the four tensor products of the qubit-1 and qubit-2 rotated
// axes, party b the two rotated axes of qubit 3.
inline std::pair<ProjectorSet, ProjectorSet> rotated_projectors(const AngleSet& angles) {
  std::array<ComplexMatrix, 3> u{local_unitary(angles[0]), local_unitary(angles[1]),
                                 local_unitary(angles[2])};
  ProjectorSet sa;
  sa.party = Party::a;
  for (int k1 = 0; k1 < 2; ++k1) {
    for (int k2 = 0; k2 < 2; ++k2) {
      std::vector<cdouble> va(4);
      for (int i1 = 0; i1 < 2; ++i1)
        for (int i2 = 0; i2 < 2; ++i2) va[2 * i1 + i2] = u[0](i1, k1) * u[1](i2, k2);
      sa.projectors.push_back(detail::rank1(va));
    }
  }
  ProjectorSet sb;
  sb.party = Party::b;
  for (int k3 = 0; k3 < 2; ++k3)
    sb.projectors.push_back(detail::rank1({u[2](0, k3), u[2](1, k3)}));
  return {std::move(sa), std::move(sb)};
}

inline double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p)
    if (x > 1e-12) h -= x * std::log2(x);
  return h;
}

// Information loss of the measurement described by the angles, phrased so
// that repeated evaluation during optimisation is cheap: the three constant
// entropies are computed once, and each call only needs the 8 outcome
// probabilities of the rotated basis.
class AmidObjective {
 public:
  explicit AmidObjective(const DensityMatrix& rho)
      : rho_(rho.matrix()),
        s_(von_neumann_entropy(rho)),
        s_a_(von_neumann_entropy(partial_trace(rho.matrix(), Party::a))),
        s_b_(von_neumann_entropy(partial_trace(rho.matrix(), Party::b))) {}

  double operator()(const AngleSet& angles) const {
    std::array<double, 9> x{angles[0].psi, angles[0].theta, angles[0].phi,
                            angles[1].psi, angles[1].theta, angles[1].phi,
                            angles[2].psi, angles[2].theta, angles[2].phi};
    return (*this)(x);
  }

  double operator()(const std::array<double, 9>& x) const {
    std::array<ComplexMatrix, 3> u{ComplexMatrix(2), ComplexMatrix(2), ComplexMatrix(2)};
    for (int q = 0; q < 3; ++q)
      u[q] = local_unitary({x[3 * q], x[3 * q + 1], x[3 * q + 2]});

    std::array<double, 8> pab{};
    std::array<double, 4> pa{};
    std::array<double, 2> pb{};
    for (int k1 = 0; k1 < 2; ++k1) {
      for (int k2 = 0; k2 < 2; ++k2) {
        for (int k3 = 0; k3 < 2; ++k3) {
          std::array<cdouble, 8> w;
          for (int i1 = 0; i1 < 2; ++i1)
            for (int i2 = 0; i2 < 2; ++i2)
              for (int i3 = 0; i3 < 2; ++i3)
                w[4 * i1 + 2 * i2 + i3] = u[0](i1, k1) * u[1](i2, k2) * u[2](i3, k3);
          cdouble q = 0.0;
          for (int r = 0; r < 8; ++r) {
            cdouble row = 0.0;
            for (int c = 0; c < 8; ++c) row += rho_(r, c) * w[c];
            q += std::conj(w[r]) * row;
          }
          const double p = q.real() < 0.0 ? 0.0 : q.real();
          pab[4 * k1 + 2 * k2 + k3] = p;
          pa[2 * k1 + k2] += p;
          pb[k3] += p;
        }
      }
    }
    return shannon_entropy(pab) - s_ + (s_a_ - shannon_entropy(pa)) +
           (s_b_ - shannon_entropy(pb));
  }

 private:
  ComplexMatrix rho_;
  double s_, s_a_, s_b_;
};

// Reference evaluation of the same objective through actual dephasing and
// eigendecomposition. Slower than AmidObjective but shares no code path with
// it, so the two keep each other honest; the optimizer's result is re-scored
// with this routine.
inline double amid_objective(const DensityMatrix& rho, const AngleSet& angles) {
  const auto [set_a, set_b] = rotated_projectors(angles);
  const DensityMatrix rho_a = partial_trace(rho, Party::a);
  const DensityMatrix rho_b = partial_trace(rho, Party::b);
  const DensityMatrix omega = dephase(rho, set_a, set_b);
  const DensityMatrix omega_a = dephase_marginal(rho_a, set_a);
  const DensityMatrix omega_b = dephase_marginal(rho_b, set_b);
  return von_neumann_entropy(omega) - von_neumann_entropy(rho) +
         (von_neumann_entropy(rho_a) - von_neumann_entropy(omega_a)) +
         (von_neumann_entropy(rho_b) - von_neumann_entropy(omega_b));
}

struct AmidConfig {
  int restarts = 24;
  std::uint64_t seed = 42;
  double tolerance = 1e-6;       // simplex diameter at which a restart stops
  long max_evals_per_restart = 2000;
};

struct AmidResult {
  double kt = 0.0;
  double amid = 0.0;
  AngleSet argmin{};
  int restarts_used = 0;
  long objective_evals = 0;
};

namespace detail {

using Point9 = std::array<double, 9>;

struct NmOutcome {
  Point9 x{};
  double f = 0.0;
  long evals = 0;
};

// Plain Nelder-Mead downhill simplex, reflection 1, expansion 2, contraction
// 0.5, shrink 0.5. Good enough here because every restart is cheap and the
// multistart carries the burden of globality.
template <typename F>
NmOutcome nelder_mead(F&& f, const Point9& x0, double tol, long max_evals) {
  constexpr int n = 9;
  std::array<Point9, n + 1> xs;
  std::array<double, n + 1> fs;
  long evals = 0;
  xs[0] = x0;
  fs[0] = f(xs[0]);
  ++evals;
  for (int i = 0; i < n; ++i) {
    xs[i + 1] = x0;
    xs[i + 1][i] += 0.5;
    fs[i + 1] = f(xs[i + 1]);
    ++evals;
  }

  std::array<int, n + 1> order;
  for (int i = 0; i <= n; ++i) order[i] = i;

  auto sort_order = [&] {
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
  };

  while (true) {
    sort_order();
    const int best = order[0], second_worst = order[n - 1], worst = order[n];

    double diameter = 0.0;
    for (int i = 1; i <= n; ++i) {
      double d2 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double d = xs[order[i]][k] - xs[best][k];
        d2 += d * d;
      }
      diameter = std::max(diameter, std::sqrt(d2));
    }
    if (diameter < tol || evals >= max_evals) break;

    Point9 centroid{};
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) centroid[k] += xs[order[i]][k] / n;

    Point9 xr;
    for (int k = 0; k < n; ++k) xr[k] = centroid[k] + (centroid[k] - xs[worst][k]);
    const double fr = f(xr);
    ++evals;

    if (fr < fs[best]) {
      Point9 xe;
      for (int k = 0; k < n; ++k) xe[k] = centroid[k] + 2.0 * (xr[k] - centroid[k]);
      const double fe = f(xe);
      ++evals;
      if (fe < fr) {
        xs[worst] = xe;
        fs[worst] = fe;
      } else {
        xs[worst] = xr;
        fs[worst] = fr;
      }
    } else if (fr < fs[second_worst]) {
      xs[worst] = xr;
      fs[worst] = fr;
    } else {
      Point9 xc;
      bool accepted = false;
      if (fr < fs[worst]) {  // contract toward the reflected point
        for (int k = 0; k < n; ++k) xc[k] = centroid[k] + 0.5 * (xr[k] - centroid[k]);
        const double fc = f(xc);
        ++evals;
        if (fc <= fr) {
          xs[worst] = xc;
          fs[worst] = fc;
          accepted = true;
        }
      } else {  // contract toward the worst vertex
        for (int k = 0; k < n; ++k) xc[k] = centroid[k] + 0.5 * (xs[worst][k] - centroid[k]);
        const double fc = f(xc);
        ++evals;
        if (fc < fs[worst]) {
          xs[worst] = xc;
          fs[worst] = fc;
          accepted = true;
        }
      }
      if (!accepted) {  // shrink everything toward the best vertex
        for (int i = 1; i <= n; ++i) {
          const int idx = order[i];
          for (int k = 0; k < n; ++k)
            xs[idx][k] = xs[best][k] + 0.5 * (xs[idx][k] - xs[best][k]);
          fs[idx] = f(xs[idx]);
          ++evals;
        }
      }
    }
  }

  sort_order();
  return {xs[order[0]], fs[order[0]], evals};
}

// Curated starting rotations. The first five repeatedly land in the basin of
// the global minimum across the state families treated here; the last three
// are component permutations of the same triples, a hedge in case a basin
// only opens under the permuted reading.
inline const std::vector<Point9>& warm_starts() {
  static const std::vector<Point9> starts = {
      {2.31, 1.3, 4.43, 2.31, 1.3, 4.43, 2.31, 1.3, 4.43},
      {1.1, 2.23, 0.0, 1.1, 1.1, 0.0, 1.1, 1.1, 0.0},
      {2.2, 2.2, 2.3, 2.2, 2.2, 2.3, 2.2, 2.2, 2.3},
      {1.57, 1.57, 1.57, 1.57, 1.57, 1.57, 1.57, 1.57, 1.57},
      {1.57, 1.57, 2.22, 1.57, 1.57, 2.22, 1.57, 1.57, 2.22},
      {1.3, 4.43, 2.31, 1.3, 4.43, 2.31, 1.3, 4.43, 2.31},
      {2.23, 0.0, 1.1, 1.1, 0.0, 1.1, 1.1, 0.0, 1.1},
      {2.2, 2.3, 2.2, 2.2, 2.3, 2.2, 2.2, 2.3, 2.2},
  };
  return starts;
}

inline std::vector<Point9> start_points(int restarts, std::uint64_t seed) {
  std::vector<Point9> pts;
  pts.push_back(Point9{});  // identity rotation
  for (const auto& w : warm_starts()) pts.push_back(w);
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> dist(0.0, 2.0 * 3.14159265358979323846);
  while (static_cast<int>(pts.size()) < restarts) {
    Point9 p;
    for (double& v : p) v = dist(eng);
    pts.push_back(p);
  }
  if (restarts > 0 && static_cast<int>(pts.size()) > restarts) pts.resize(restarts);
  return pts;
}

}  // namespace detail

inline AmidResult amid(const DensityMatrix& rho, const AmidConfig& cfg = {}, double kt = 0.0) {
  const AmidObjective f(rho);
  auto eval = [&f](const detail::Point9& x) { return f(x); };

  AmidResult r;
  r.kt = kt;
  r.amid = std::numeric_limits<double>::infinity();
  detail::Point9 best_x{};
  for (const auto& start : detail::start_points(cfg.restarts, cfg.seed)) {
    const auto out =
        detail::nelder_mead(eval, start, cfg.tolerance, cfg.max_evals_per_restart);
    r.objective_evals += out.evals;
    ++r.restarts_used;
    if (out.f < r.amid) {  // strict, so ties keep the earliest restart
      r.amid = out.f;
      best_x = out.x;
    }
  }
  for (int q = 0; q < 3; ++q)
    r.argmin[q] = {best_x[3 * q], best_x[3 * q + 1], best_x[3 * q + 2]};
  r.amid = amid_objective(rho, r.argmin);  // re-score through the slow route
  return r;
}

}  // namespace qcorr

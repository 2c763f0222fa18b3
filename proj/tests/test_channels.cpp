#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "qcorr/channels.hpp"
#include "qcorr/density.hpp"
#include "qcorr/eig.hpp"
#include "qcorr/lindblad.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {

const ChannelPoint kChannels[8] = {
    {StateKind::Ghz, NoiseKind::PauliX, 0.0},  {StateKind::Ghz, NoiseKind::PauliY, 0.0},
    {StateKind::Ghz, NoiseKind::PauliZ, 0.0},  {StateKind::Ghz, NoiseKind::Isotropic, 0.0},
    {StateKind::W, NoiseKind::PauliX, 0.0},    {StateKind::W, NoiseKind::PauliY, 0.0},
    {StateKind::W, NoiseKind::PauliZ, 0.0},    {StateKind::W, NoiseKind::Isotropic, 0.0}};

}  // namespace

TEST_CASE("evolution at time zero returns the initial state exactly") {
  for (auto ch : kChannels) {
    ch.kt = 0.0;
    const auto evolved = evolve_analytic(ch);
    const auto fresh = density_of(initial_state(ch.state));
    REQUIRE(max_abs_diff(evolved.matrix(), fresh.matrix()) <= 1e-15);
  }
}

TEST_CASE("every analytic channel yields a valid density matrix") {
  for (auto ch : kChannels) {
    for (double kt : {0.0, 0.05, 0.3, 1.0, 3.0, 10.0}) {
      ch.kt = kt;
      const auto rho = evolve_analytic(ch);
      REQUIRE(std::abs(trace(rho.matrix()) - cdouble(1.0)) < 1e-12);
      REQUIRE(hermiticity_defect(rho.matrix()) < 1e-13);
      const auto s = hermitian_eig(rho.matrix());
      for (int i = 0; i < 8; ++i) REQUIRE(s.values[i] >= -1e-10);
    }
  }
}

TEST_CASE("negative or non-finite kt is rejected") {
  REQUIRE_THROWS_AS(evolve_analytic({StateKind::Ghz, NoiseKind::PauliX, -0.1}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(evolve_analytic({StateKind::W, NoiseKind::PauliZ, std::nan("")}),
                    std::invalid_argument);
}

TEST_CASE("coefficient values stay in range and start where they should") {
  for (auto ch : kChannels) {
    ch.kt = 0.0;
    for (const auto& c : coefficients(ch)) {
      if (c.zero_at_start)
        REQUIRE(c.value == Catch::Approx(0.0).margin(1e-15));
      else
        REQUIRE(c.value > 0.0);
    }
    for (double kt : {0.0, 0.1, 0.7, 2.0, 5.0}) {
      ch.kt = kt;
      for (const auto& c : coefficients(ch)) {
        REQUIRE(c.value >= -1e-15);
        REQUIRE(c.value <= 4.0 + 1e-15);
      }
    }
  }
}

TEST_CASE("coefficient trends hold along a fine grid") {
  std::vector<double> grid;
  for (int i = 0; i <= 120; ++i) grid.push_back(i * 0.025);
  for (auto ch : kChannels) {
    ch.kt = 0.0;
    const auto names = coefficients(ch);
    for (std::size_t ci = 0; ci < names.size(); ++ci) {
      if (names[ci].trend == CoefficientTrend::NonMonotone) continue;
      double prev = names[ci].value;
      bool first = true;
      for (double kt : grid) {
        ch.kt = kt;
        const double v = coefficients(ch)[ci].value;
        if (!first) {
          if (names[ci].trend == CoefficientTrend::NonIncreasing)
            REQUIRE(v <= prev + 1e-12);
          else
            REQUIRE(v >= prev - 1e-12);
        }
        prev = v;
        first = false;
      }
    }
  }
}

TEST_CASE("a non-monotone coefficient really rises and falls") {
  // the ghz-y cross term vanishes at both ends of the time axis
  auto value = [](double kt) {
    ChannelPoint p{StateKind::Ghz, NoiseKind::PauliY, kt};
    for (const auto& c : coefficients(p))
      if (std::string(c.name) == "beta2") return c.value;
    FAIL("beta2 missing");
    return 0.0;
  };
  REQUIRE(value(0.0) == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(value(0.3) > 0.1);
  REQUIRE(value(8.0) < 1e-6);
}

TEST_CASE("runge-kutta integration agrees with the closed forms") {
  for (auto ch : kChannels) {
    for (double kt : {0.1, 0.5, 1.0, 3.0}) {
      ch.kt = kt;
      const auto numeric = evolve_lindblad_numeric(ch.state, ch.noise, 1.0, kt, 1e-3);
      const auto analytic = evolve_analytic(ch);
      REQUIRE(max_abs_diff(numeric.matrix(), analytic.matrix()) < 1e-6);
    }
  }
}

TEST_CASE("integration with separate rate and time collapses onto kt") {
  // kappa = 4, t = 0.125 must land on the same state as kappa = 1, t = 0.5
  const auto fast = evolve_lindblad_numeric(StateKind::W, NoiseKind::Isotropic, 4.0, 0.125, 2.5e-4);
  const auto slow = evolve_lindblad_numeric(StateKind::W, NoiseKind::Isotropic, 1.0, 0.5, 1e-3);
  REQUIRE(max_abs_diff(fast.matrix(), slow.matrix()) < 1e-8);
}

TEST_CASE("integrator rejects out-of-contract arguments") {
  REQUIRE_THROWS_AS(evolve_lindblad_numeric(StateKind::Ghz, NoiseKind::PauliX, 0.0, 1.0, 1e-4),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(evolve_lindblad_numeric(StateKind::Ghz, NoiseKind::PauliX, 1.0, -1.0, 1e-4),
                    std::invalid_argument);
  // step too coarse for the requested rate
  REQUIRE_THROWS_AS(evolve_lindblad_numeric(StateKind::Ghz, NoiseKind::PauliX, 10.0, 1.0, 1e-3),
                    std::invalid_argument);
}

TEST_CASE("ghz under z noise keeps both marginals frozen") {
  const auto early = evolve_analytic({StateKind::Ghz, NoiseKind::PauliZ, 0.0});
  const auto late = evolve_analytic({StateKind::Ghz, NoiseKind::PauliZ, 2.0});
  for (Party p : {Party::a, Party::b}) {
    REQUIRE(max_abs_diff(partial_trace(early.matrix(), p), partial_trace(late.matrix(), p)) <
            1e-12);
  }
}

TEST_CASE("w marginal under x noise hits a doubly degenerate spectrum") {
  // at kt = ln2/4 the two-qubit marginal has eigenvalues {7,7,1,1}/16
  const double kt = std::log(2.0) / 4.0;
  const auto rho = evolve_analytic({StateKind::W, NoiseKind::PauliX, kt});
  const auto marginal = partial_trace(rho.matrix(), Party::a);
  const auto s = hermitian_eig(marginal);

  REQUIRE(s.values[0] == Catch::Approx(7.0 / 16.0).margin(1e-12));
  REQUIRE(s.values[1] == Catch::Approx(7.0 / 16.0).margin(1e-12));
  REQUIRE(s.values[2] == Catch::Approx(1.0 / 16.0).margin(1e-12));
  REQUIRE(s.values[3] == Catch::Approx(1.0 / 16.0).margin(1e-12));

  // symmetric functions of the spectrum pin it without ordering ambiguity
  double sum = 0.0, pairs = 0.0, prod = 1.0;
  for (int i = 0; i < 4; ++i) {
    sum += s.values[i];
    prod *= s.values[i];
    for (int j = i + 1; j < 4; ++j) pairs += s.values[i] * s.values[j];
  }
  REQUIRE(sum == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(pairs == Catch::Approx(78.0 / 256.0).margin(1e-12));
  REQUIRE(prod == Catch::Approx(49.0 / 65536.0).margin(1e-12));
}

TEST_CASE("w state under x and y noise share every diagonal entry") {
  for (double kt : {0.05, 0.4, 1.7}) {
    const auto x = evolve_analytic({StateKind::W, NoiseKind::PauliX, kt});
    const auto y = evolve_analytic({StateKind::W, NoiseKind::PauliY, kt});
    for (int i = 0; i < 8; ++i)
      REQUIRE(std::abs(x.matrix()(i, i) - y.matrix()(i, i)) < 1e-15);
  }
}

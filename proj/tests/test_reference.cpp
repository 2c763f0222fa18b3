#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qcorr/channels.hpp"
#include "qcorr/mid.hpp"
#include "qcorr/reference.hpp"

using namespace qcorr;

namespace {

std::vector<double> grid61() {
  std::vector<double> g;
  for (int i = 0; i <= 60; ++i) g.push_back(3.0 * i / 60.0);
  return g;
}

const ChannelPoint kClosedForm[6] = {
    {StateKind::Ghz, NoiseKind::PauliX, 0.0},   {StateKind::Ghz, NoiseKind::PauliY, 0.0},
    {StateKind::Ghz, NoiseKind::PauliZ, 0.0},   {StateKind::Ghz, NoiseKind::Isotropic, 0.0},
    {StateKind::W, NoiseKind::PauliZ, 0.0},     {StateKind::W, NoiseKind::Isotropic, 0.0}};

}  // namespace

TEST_CASE("every closed form starts at one bit") {
  for (const auto& ch : kClosedForm)
    REQUIRE(reference_mid(ch.state, ch.noise, 0.0) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("closed forms match the measurement pipeline across the grid") {
  for (const auto& ch : kClosedForm) {
    double worst = 0.0;
    for (double kt : grid61()) {
      const auto m = mid(evolve_analytic({ch.state, ch.noise, kt}), kt);
      worst = std::max(worst, std::abs(m.mid - reference_mid(ch.state, ch.noise, kt)));
    }
    INFO("channel " << to_string(ch.state) << "-" << to_string(ch.noise));
    REQUIRE(worst <= 1e-8);
  }
}

TEST_CASE("closed-form entropies match eigenvalue sums") {
  for (const auto& ch : kClosedForm) {
    double worst_state = 0.0, worst_dephased = 0.0;
    for (double kt : grid61()) {
      const auto rho = evolve_analytic({ch.state, ch.noise, kt});
      const double s = von_neumann_entropy(rho);
      worst_state =
          std::max(worst_state,
                   std::abs(s - reference_entropy(ch.state, ch.noise, kt, EntropyKind::State)));
      const auto sa = marginal_projectors(partial_trace(rho, Party::a), Party::a);
      const auto sb = marginal_projectors(partial_trace(rho, Party::b), Party::b);
      const double sp = von_neumann_entropy(dephase(rho, sa, sb));
      worst_dephased = std::max(
          worst_dephased,
          std::abs(sp - reference_entropy(ch.state, ch.noise, kt, EntropyKind::Dephased)));
    }
    INFO("channel " << to_string(ch.state) << "-" << to_string(ch.noise));
    REQUIRE(worst_state <= 1e-8);
    REQUIRE(worst_dephased <= 1e-8);
  }
}

TEST_CASE("channels without a closed form say so") {
  for (NoiseKind n : {NoiseKind::PauliX, NoiseKind::PauliY}) {
    REQUIRE_THROWS_AS(reference_mid(StateKind::W, n, 0.5), UnsupportedReference);
    REQUIRE_THROWS_AS(reference_entropy(StateKind::W, n, 0.5, EntropyKind::State),
                      UnsupportedReference);
  }
}

TEST_CASE("frozen spot value of the ghz-z closed form") {
  // (1/4) log2(1/2) + (3/4) log2(3/2) at kt = ln2 / 6
  REQUIRE(reference_mid(StateKind::Ghz, NoiseKind::PauliZ, std::log(2.0) / 6.0) ==
          Catch::Approx(0.188721875540867).margin(1e-12));
}

TEST_CASE("the dephased w-x closed form matches the pipeline") {
  for (double kt : {0.1, 0.5, 1.0}) {
    const auto rho = evolve_analytic({StateKind::W, NoiseKind::PauliX, kt});
    const auto sa = marginal_projectors(partial_trace(rho, Party::a), Party::a);
    const auto sb = marginal_projectors(partial_trace(rho, Party::b), Party::b);
    const auto pi = dephase(rho, sa, sb);
    const auto ref = reference_pi_w_x(kt);
    REQUIRE(max_abs_diff(pi.matrix(), ref.matrix()) <= 1e-9);
  }
}

TEST_CASE("the dephased w-x closed form rejects the degenerate endpoint") {
  REQUIRE_THROWS_AS(reference_pi_w_x(0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(reference_pi_w_x(-1.0), std::invalid_argument);
}

TEST_CASE("negative time is rejected by the closed forms") {
  REQUIRE_THROWS_AS(reference_mid(StateKind::Ghz, NoiseKind::PauliZ, -0.2),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(reference_entropy(StateKind::Ghz, NoiseKind::PauliX, -0.2,
                                      EntropyKind::State),
                    std::invalid_argument);
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qcorr/channels.hpp"
#include "qcorr/mid.hpp"

using namespace qcorr;

namespace {

DensityMatrix random_density(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> rank_pick(1, 4);
  const int rank = rank_pick(rng);
  ComplexMatrix acc(dim);
  std::vector<double> w(static_cast<std::size_t>(rank));
  double total = 0.0;
  for (auto& x : w) total += (x = std::uniform_real_distribution<double>(0.1, 1.0)(rng));
  for (int r = 0; r < rank; ++r) {
    std::vector<cdouble> v(static_cast<std::size_t>(dim));
    double n2 = 0.0;
    for (auto& x : v) {
      x = cdouble(gauss(rng), gauss(rng));
      n2 += std::norm(x);
    }
    const double scale = w[static_cast<std::size_t>(r)] / (total * n2);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        acc(i, j) += v[static_cast<std::size_t>(i)] * std::conj(v[static_cast<std::size_t>(j)]) * scale;
  }
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      const cdouble m = 0.5 * (acc(i, j) + std::conj(acc(j, i)));
      acc(i, j) = m;
      acc(j, i) = std::conj(m);
    }
  return DensityMatrix(acc);
}

const ChannelPoint kChannels[8] = {
    {StateKind::Ghz, NoiseKind::PauliX, 0.0},  {StateKind::Ghz, NoiseKind::PauliY, 0.0},
    {StateKind::Ghz, NoiseKind::PauliZ, 0.0},  {StateKind::Ghz, NoiseKind::Isotropic, 0.0},
    {StateKind::W, NoiseKind::PauliX, 0.0},    {StateKind::W, NoiseKind::PauliY, 0.0},
    {StateKind::W, NoiseKind::PauliZ, 0.0},    {StateKind::W, NoiseKind::Isotropic, 0.0}};

}  // namespace

TEST_CASE("the fresh ghz state carries one bit of quantum correlation") {
  const auto r = mid(evolve_analytic({StateKind::Ghz, NoiseKind::PauliX, 0.0}));
  REQUIRE(r.s_rho == Catch::Approx(0.0).margin(1e-12));
  REQUIRE(r.s_pi_rho == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(r.s_a == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(r.s_b == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(r.mutual_information == Catch::Approx(2.0).margin(1e-12));
  REQUIRE(r.classical_mutual_information == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(r.mid == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("the two routes to the disturbance agree") {
  // four-term bracket vs difference of mutual informations
  for (auto ch : kChannels) {
    for (double kt : {0.0, 0.1, 0.6, 1.5, 3.0}) {
      ch.kt = kt;
      const auto r = mid(evolve_analytic(ch), kt);
      REQUIRE(std::abs(r.mid - (r.mutual_information - r.classical_mutual_information)) <=
              1e-12);
      REQUIRE(r.mid >= -1e-9);
    }
  }
}

TEST_CASE("known spot value on the ghz-z curve") {
  const double kt = std::log(2.0) / 6.0;
  const auto r = mid(evolve_analytic({StateKind::Ghz, NoiseKind::PauliZ, kt}), kt);
  // closed form: (1/4) log2(1/2) + (3/4) log2(3/2)
  REQUIRE(r.mid == Catch::Approx(0.188721875540867).margin(1e-12));
}

TEST_CASE("dephasing is idempotent") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 200; ++rep) {
    const auto rho = random_density(rng, 8);
    const auto sa = marginal_projectors(partial_trace(rho, Party::a), Party::a);
    const auto sb = marginal_projectors(partial_trace(rho, Party::b), Party::b);
    const auto once = dephase(rho, sa, sb);
    const auto twice = dephase(once, sa, sb);
    REQUIRE(max_abs_diff(once.matrix(), twice.matrix()) <= 1e-12);
  }
}

TEST_CASE("dephasing never lowers the entropy") {
  std::mt19937_64 rng(37);
  for (int rep = 0; rep < 200; ++rep) {
    const auto rho = random_density(rng, 8);
    const auto sa = marginal_projectors(partial_trace(rho, Party::a), Party::a);
    const auto sb = marginal_projectors(partial_trace(rho, Party::b), Party::b);
    REQUIRE(von_neumann_entropy(dephase(rho, sa, sb)) >= von_neumann_entropy(rho) - 1e-9);
  }
}

TEST_CASE("dephasing commutes with taking marginals") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 200; ++rep) {
    const auto rho = random_density(rng, 8);
    const auto rho_a = partial_trace(rho, Party::a);
    const auto rho_b = partial_trace(rho, Party::b);
    const auto sa = marginal_projectors(rho_a, Party::a);
    const auto sb = marginal_projectors(rho_b, Party::b);
    const auto pi = dephase(rho, sa, sb);
    REQUIRE(max_abs_diff(partial_trace(pi.matrix(), Party::a),
                         dephase_marginal(rho_a, sa).matrix()) <= 1e-10);
    REQUIRE(max_abs_diff(partial_trace(pi.matrix(), Party::b),
                         dephase_marginal(rho_b, sb).matrix()) <= 1e-10);
  }
}

TEST_CASE("projector sets resolve the identity and stay orthogonal") {
  std::mt19937_64 rng(43);
  for (int rep = 0; rep < 200; ++rep) {
    const int dim = rep % 2 == 0 ? 4 : 2;
    const Party party = dim == 4 ? Party::a : Party::b;
    const auto marginal = random_density(rng, dim);
    const auto set = marginal_projectors(marginal, party);
    REQUIRE(set.projectors.size() == static_cast<std::size_t>(dim));
    ComplexMatrix sum(dim);
    for (std::size_t m = 0; m < set.projectors.size(); ++m) {
      sum += set.projectors[m];
      for (std::size_t l = 0; l < set.projectors.size(); ++l) {
        const auto prod = matmul(set.projectors[m], set.projectors[l]);
        const auto expect = m == l ? set.projectors[m] : ComplexMatrix(dim);
        REQUIRE(max_abs_diff(prod, expect) <= 1e-10);
      }
    }
    REQUIRE(max_abs_diff(sum, ComplexMatrix::identity(dim)) <= 1e-10);
  }
}

TEST_CASE("a fully degenerate marginal measures in the computational basis") {
  ComplexMatrix m(4);
  for (int i = 0; i < 4; ++i) m(i, i) = 0.25;
  const auto set = marginal_projectors(DensityMatrix(m), Party::a);
  for (int k = 0; k < 4; ++k) {
    ComplexMatrix axis(4);
    axis(k, k) = 1.0;
    REQUIRE(max_abs_diff(set.projectors[static_cast<std::size_t>(k)], axis) <= 1e-12);
  }
}

TEST_CASE("entropy is additive over product states") {
  std::mt19937_64 rng(47);
  for (int rep = 0; rep < 200; ++rep) {
    const auto a = random_density(rng, 4);
    const auto b = random_density(rng, 2);
    const auto joint = DensityMatrix(kron(a.matrix(), b.matrix()));
    REQUIRE(std::abs(von_neumann_entropy(joint) -
                     (von_neumann_entropy(a) + von_neumann_entropy(b))) <= 1e-9);
    // and a product state holds no correlation at all
    REQUIRE(std::abs(mutual_information(joint)) <= 1e-9);
    REQUIRE(std::abs(mid(joint).mid) <= 1e-8);
  }
}

TEST_CASE("mismatched marginal dimension is rejected") {
  ComplexMatrix m(2);
  m(0, 0) = m(1, 1) = 0.5;
  REQUIRE_THROWS_AS(marginal_projectors(DensityMatrix(m), Party::a), std::invalid_argument);
}

TEST_CASE("dephase rejects an incomplete projector set") {
  const auto rho = evolve_analytic({StateKind::Ghz, NoiseKind::PauliX, 0.3});
  auto sa = marginal_projectors(partial_trace(rho, Party::a), Party::a);
  const auto sb = marginal_projectors(partial_trace(rho, Party::b), Party::b);
  sa.projectors.pop_back();
  REQUIRE_THROWS_AS(dephase(rho, sa, sb), std::invalid_argument);
}

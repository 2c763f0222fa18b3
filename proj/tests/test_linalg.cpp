#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "qcorr/complex_matrix.hpp"
#include "qcorr/eig.hpp"

using namespace qcorr;

namespace {

ComplexMatrix pauli(char which) {
  ComplexMatrix m(2);
  switch (which) {
    case 'x': m(0, 1) = m(1, 0) = 1.0; break;
    case 'y': m(0, 1) = cdouble(0, -1); m(1, 0) = cdouble(0, 1); break;
    default: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
  }
  return m;
}

ComplexMatrix random_hermitian(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix h(dim);
  for (int i = 0; i < dim; ++i) {
    h(i, i) = gauss(rng);
    for (int j = i + 1; j < dim; ++j) {
      const cdouble v(gauss(rng), gauss(rng));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

}  // namespace

TEST_CASE("matrix construction accepts only the supported dimensions") {
  for (int d : {2, 4, 8}) REQUIRE_NOTHROW(ComplexMatrix(d));
  for (int d : {0, 1, 3, 5, 7, 9, 16}) REQUIRE_THROWS_AS(ComplexMatrix(d), std::invalid_argument);
}

TEST_CASE("pauli algebra comes out right") {
  const auto sx = pauli('x'), sy = pauli('y'), sz = pauli('z');
  // sigma_x sigma_y = i sigma_z
  auto expected = sz;
  expected *= cdouble(0, 1);
  REQUIRE(max_abs_diff(matmul(sx, sy), expected) < 1e-15);
  REQUIRE(std::abs(trace(matmul(sx, sx)) - cdouble(2.0)) < 1e-15);
  REQUIRE(max_abs_diff(dagger(sy), sy) < 1e-15);
}

TEST_CASE("kron obeys the dimension cap") {
  const auto sx = pauli('x');
  const ComplexMatrix four(4);
  REQUIRE_NOTHROW(kron(sx, sx));
  REQUIRE_NOTHROW(kron(four, sx));
  REQUIRE_THROWS_AS(kron(four, four), std::invalid_argument);
}

TEST_CASE("partial trace recovers the factors of a product state") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    auto ha = random_hermitian(rng, 4);
    auto hb = random_hermitian(rng, 2);
    // turn them into unit-trace positive matrices by squaring and scaling
    auto a = matmul(ha, dagger(ha));
    auto b = matmul(hb, dagger(hb));
    const double ta = trace(a).real(), tb = trace(b).real();
    a *= cdouble(1.0 / ta);
    b *= cdouble(1.0 / tb);
    const auto joint = kron(a, b);
    REQUIRE(max_abs_diff(partial_trace(joint, Party::a), a) < 1e-13);
    REQUIRE(max_abs_diff(partial_trace(joint, Party::b), b) < 1e-13);
  }
}

TEST_CASE("partial trace preserves trace and hermiticity") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const auto h = random_hermitian(rng, 8);
    for (Party p : {Party::a, Party::b}) {
      const auto red = partial_trace(h, p);
      REQUIRE(std::abs(trace(red) - trace(h)) < 1e-12);
      REQUIRE(hermiticity_defect(red) < 1e-13);
    }
  }
}

TEST_CASE("eigendecomposition of sigma_x") {
  const auto s = hermitian_eig(pauli('x'));
  REQUIRE(s.values[0] == Catch::Approx(1.0).margin(1e-14));
  REQUIRE(s.values[1] == Catch::Approx(-1.0).margin(1e-14));
  // phase convention: leading component of each column is real positive
  REQUIRE(s.vectors(0, 0).real() > 0.0);
  REQUIRE(std::abs(s.vectors(0, 0).imag()) < 1e-14);
  REQUIRE(max_abs_diff(s.reconstruct(), pauli('x')) < 1e-14);
}

TEST_CASE("eigendecomposition reconstructs random hermitian input") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 200; ++rep) {
    const int dim = rep % 3 == 0 ? 2 : rep % 3 == 1 ? 4 : 8;
    const auto h = random_hermitian(rng, dim);
    const auto s = hermitian_eig(h);
    const double scale = std::max(1.0, frobenius_norm(h));
    REQUIRE(max_abs_diff(s.reconstruct(), h) < 1e-11 * scale);
    for (int i = 0; i + 1 < dim; ++i) REQUIRE(s.values[i] >= s.values[i + 1]);
    // columns orthonormal
    const auto gram = matmul(dagger(s.vectors), s.vectors);
    REQUIRE(max_abs_diff(gram, ComplexMatrix::identity(dim)) < 1e-12);
  }
}

TEST_CASE("eigendecomposition rejects a visibly non-hermitian matrix") {
  ComplexMatrix m(2);
  m(0, 1) = 1.0;  // missing the conjugate partner
  REQUIRE_THROWS_AS(hermitian_eig(m), std::invalid_argument);
}

TEST_CASE("entropy of known spectra") {
  ComplexMatrix mixed(4);
  for (int i = 0; i < 4; ++i) mixed(i, i) = 0.25;
  REQUIRE(von_neumann_entropy(mixed) == Catch::Approx(2.0).margin(1e-12));

  ComplexMatrix pure(2);
  pure(0, 0) = 1.0;
  REQUIRE(von_neumann_entropy(pure) == Catch::Approx(0.0).margin(1e-12));

  ComplexMatrix half(2);
  half(0, 0) = 0.75;
  half(1, 1) = 0.25;
  const double expect = -(0.75 * std::log2(0.75) + 0.25 * std::log2(0.25));
  REQUIRE(von_neumann_entropy(half) == Catch::Approx(expect).margin(1e-12));
}

TEST_CASE("degenerate spectrum is handled exactly") {
  // two pairs of equal eigenvalues {0.4375, 0.4375, 0.0625, 0.0625}
  ComplexMatrix m(4);
  m(0, 0) = m(1, 1) = 0.25;
  m(2, 2) = m(3, 3) = 0.25;
  m(0, 1) = m(1, 0) = 0.1875;
  m(2, 3) = m(3, 2) = -0.1875;
  const auto s = hermitian_eig(m);
  REQUIRE(s.values[0] == Catch::Approx(0.4375).margin(1e-13));
  REQUIRE(s.values[1] == Catch::Approx(0.4375).margin(1e-13));
  REQUIRE(s.values[2] == Catch::Approx(0.0625).margin(1e-13));
  REQUIRE(s.values[3] == Catch::Approx(0.0625).margin(1e-13));
  REQUIRE(max_abs_diff(s.reconstruct(), m) < 1e-13);
}

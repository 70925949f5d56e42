#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "gates.hpp"
#include "hamgen/errors.hpp"
#include "hamgen/matrix.hpp"
#include "hamgen/spectral.hpp"
#include "oracles.hpp"

using namespace hamgen;
using std::numbers::pi;

TEST_SUITE("matrix_core") {

TEST_CASE("basic arithmetic and predicates") {
  const ComplexMatrix x{{0, 1}, {1, 0}};
  const ComplexMatrix z{{1, 0}, {0, -1}};
  CHECK(x * x == ComplexMatrix::identity(2));
  CHECK(kron(z, x) == oracle::pauli_kron("ZX"));
  CHECK(commutator(x, z).frobenius_norm() == doctest::Approx(std::sqrt(8.0)));
  CHECK(x.is_hermitian());
  CHECK(x.is_unitary());
  CHECK_FALSE(ComplexMatrix({{1, 1}, {0, 1}}).is_hermitian());
  CHECK_FALSE(ComplexMatrix({{2, 0}, {0, 1}}).is_unitary());
  CHECK(qubit_count(8) == 3);
  CHECK_THROWS_AS(qubit_count(6), BadDimension);
  CHECK_THROWS_AS(frobenius_distance(ComplexMatrix(2), ComplexMatrix(4)),
                  DimensionMismatch);
}

TEST_CASE("spectral_decompose on diagonal inputs") {
  SUBCASE("identity") {
    const auto d = spectral_decompose(ComplexMatrix::identity(4), MatrixKind::hermitian);
    for (const auto& l : d.eigenvalues) CHECK(l == Complex{1.0, 0.0});
    CHECK(d.eigenvectors == ComplexMatrix::identity(4));
    CHECK(d.degenerate_blocks().size() == 1);
  }
  SUBCASE("sigma_z as a unitary orders by phase") {
    const auto d = spectral_decompose(ComplexMatrix{{1, 0}, {0, -1}}, MatrixKind::unitary);
    CHECK(d.eigenvalues[0].real() == doctest::Approx(1.0));
    CHECK(d.eigenvalues[1].real() == doctest::Approx(-1.0));
    CHECK(d.eigenvectors == ComplexMatrix::identity(2));
  }
  SUBCASE("sigma_z as a Hermitian matrix orders by value") {
    const auto d = spectral_decompose(ComplexMatrix{{1, 0}, {0, -1}}, MatrixKind::hermitian);
    CHECK(d.eigenvalues[0].real() == doctest::Approx(-1.0));
    CHECK(d.eigenvalues[1].real() == doctest::Approx(1.0));
    CHECK(std::abs(d.eigenvectors(1, 0)) == doctest::Approx(1.0));
  }
}

TEST_CASE("Toffoli eigenphases are 0 (x7) and pi (x1)") {
  const auto d = spectral_decompose(fixtures::toffoli(), MatrixKind::unitary);
  const auto phases = block_phases(d);
  for (int k = 0; k < 7; ++k) CHECK(std::abs(phases[k]) < 1e-12);
  CHECK(phases[7] == doctest::Approx(pi).epsilon(1e-14));
  const auto blocks = d.degenerate_blocks();
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].size() == 7);
  CHECK(blocks[1] == std::vector<std::size_t>{7});
  CHECK(oracle::frob(d.reconstruct(), fixtures::toffoli()) < 1e-12);
}

TEST_CASE("spectral_decompose error paths") {
  CHECK_THROWS_AS(spectral_decompose(ComplexMatrix({{1, 1}, {0, 1}}), MatrixKind::hermitian),
                  NotNormal);
  CHECK_THROWS_AS(spectral_decompose(ComplexMatrix({{2, 0}, {0, 1}}), MatrixKind::unitary),
                  NotNormal);
  ComplexMatrix nan_matrix = ComplexMatrix::identity(2);
  nan_matrix(0, 0) = std::nan("");
  CHECK_THROWS_AS(spectral_decompose(nan_matrix, MatrixKind::hermitian), NotNormal);

  std::mt19937_64 rng(5);
  EigenOptions tight;
  tight.max_sweeps = 1;
  CHECK_THROWS_AS(spectral_decompose(oracle::random_hermitian(8, rng), MatrixKind::hermitian,
                                     tight),
                  ConvergenceFailure);
}

TEST_CASE("unitaries with conjugate-pair and degenerate spectra") {
  // e^{±iφ} share a Hermitian part, so this needs the skew-part refinement.
  const double phi = 0.7;
  const ComplexMatrix rotation{{std::cos(phi), -std::sin(phi)}, {std::sin(phi), std::cos(phi)}};
  auto d = spectral_decompose(rotation, MatrixKind::unitary);
  CHECK(principal_phase(d.eigenvalues[0]) == doctest::Approx(-phi));
  CHECK(principal_phase(d.eigenvalues[1]) == doctest::Approx(phi));
  CHECK(oracle::frob(d.reconstruct(), rotation) < 1e-12);

  std::mt19937_64 rng(11);
  const auto q = oracle::random_unitary(8, rng);
  std::vector<Complex> diag{std::polar(1.0, 0.3), std::polar(1.0, 0.3), std::polar(1.0, -0.3),
                            std::polar(1.0, -0.3), -1.0, -1.0, -1.0, 1.0};
  const ComplexMatrix u = q * ComplexMatrix::diagonal(diag) * q.adjoint();
  d = spectral_decompose(u, MatrixKind::unitary);
  CHECK(oracle::frob(d.reconstruct(), u) < 1e-9);
  CHECK(oracle::frob(d.eigenvectors.adjoint() * d.eigenvectors, ComplexMatrix::identity(8)) <
        1e-10);
  const auto blocks = d.degenerate_blocks();
  CHECK(blocks.size() == 4);
  // −1 must land at +π, never −π.
  for (double p : block_phases(d)) CHECK(p > -pi + 1e-6);
  const auto h = principal_log(u);
  CHECK(oracle::frob(oracle::expm_taylor(h, 1.0), u) < 1e-9);
}

TEST_CASE("matrix_exp_hermitian examples") {
  CHECK(oracle::frob(matrix_exp_hermitian(ComplexMatrix::zero(4), 2.5),
                     ComplexMatrix::identity(4)) < 1e-15);
  CHECK(oracle::frob(matrix_exp_hermitian(fixtures::h_cnot(), pi / 4), fixtures::cnot()) < 1e-10);
  CHECK(oracle::frob(matrix_exp_hermitian(fixtures::h_toffoli(), pi / 8), fixtures::toffoli()) <
        1e-10);
}

TEST_CASE("principal_log examples") {
  CHECK(principal_log(ComplexMatrix::identity(4)).frobenius_norm() < 1e-15);

  const auto h = principal_log(ComplexMatrix{{1, 0}, {0, -1}});
  CHECK(std::abs(h(0, 0)) < 1e-15);
  CHECK(h(1, 1).real() == doctest::Approx(pi).epsilon(1e-15));

  const auto hc = principal_log(fixtures::cnot());
  CHECK(oracle::frob(oracle::expm_taylor(hc, 1.0), fixtures::cnot()) < 1e-9);
  const auto ev = oracle::eigenvalues_hermitian(hc);
  CHECK(ev.minCoeff() > -pi);
  CHECK(ev.maxCoeff() <= pi + 1e-12);
}

TEST_CASE("property: spectral reconstruction and agreement with Eigen") {
  std::mt19937_64 rng(2024);
  for (std::size_t dim : {2u, 4u, 8u}) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto h = oracle::random_hermitian(dim, rng);
      const auto dh = spectral_decompose(h, MatrixKind::hermitian);
      CHECK(oracle::frob(dh.reconstruct(), h) < 1e-9);
      CHECK(oracle::frob(dh.eigenvectors * dh.eigenvectors.adjoint(),
                         ComplexMatrix::identity(dim)) < 1e-10);
      const auto ref = oracle::eigenvalues_hermitian(h);
      for (std::size_t k = 0; k < dim; ++k) {
        CHECK(std::abs(dh.eigenvalues[k].imag()) < 1e-12);
        CHECK(std::abs(dh.eigenvalues[k].real() - ref[static_cast<Eigen::Index>(k)]) < 1e-10);
      }

      const auto u = oracle::random_unitary(dim, rng);
      const auto du = spectral_decompose(u, MatrixKind::unitary);
      CHECK(oracle::frob(du.reconstruct(), u) < 1e-9);
      for (std::size_t k = 1; k < dim; ++k)
        CHECK(principal_phase(du.eigenvalues[k - 1]) <= principal_phase(du.eigenvalues[k]));
    }
  }
}

TEST_CASE("property: exp is unitary and principal_log inverts it") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = std::size_t{2} << (trial % 3);
    const auto h = oracle::random_hermitian_spectrum(dim, rng, -pi + 1e-3, pi - 1e-3);
    const auto u = matrix_exp_hermitian(h, 1.0);
    CHECK(u.is_unitary(1e-10));
    CHECK(oracle::frob(u, oracle::expm_taylor(h, 1.0)) < 1e-10);
    CHECK(oracle::frob(principal_log(u), h) < 1e-8);
  }
}

TEST_CASE("deterministic output for repeated calls") {
  std::mt19937_64 rng(3);
  const auto u = oracle::random_unitary(8, rng);
  const auto a = spectral_decompose(u, MatrixKind::unitary);
  const auto b = spectral_decompose(u, MatrixKind::unitary);
  CHECK(a.eigenvectors == b.eigenvectors);
  CHECK(a.eigenvalues == b.eigenvalues);
}

TEST_CASE("matrix text format") {
  std::istringstream in("1\n1,0 0,0\n0,0 -1,0\n");
  CHECK(read_matrix_text(in) == ComplexMatrix({{1, 0}, {0, -1}}));

  std::istringstream y("1\n0,0 0,-1\n0,1 0,0\n");
  CHECK(read_matrix_text(y) == oracle::pauli_1q('Y'));

  std::mt19937_64 rng(9);
  const auto u = oracle::random_unitary(4, rng);
  std::stringstream round;
  write_matrix_text(round, u);
  CHECK(read_matrix_text(round) == u);

  auto parse = [](const char* text) {
    std::istringstream s(text);
    return read_matrix_text(s);
  };
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("x\n"), ParseError);
  CHECK_THROWS_AS(parse("7\n"), BadDimension);
  CHECK_THROWS_AS(parse("1\n1,0 0,0\n"), ParseError);
  CHECK_THROWS_AS(parse("1\n1,0\n0,0 1,0\n"), ParseError);
  CHECK_THROWS_AS(parse("1\n1;0 0,0\n0,0 1,0\n"), ParseError);
  CHECK_THROWS_AS(parse("1\n1,0 0,0 0,0\n0,0 1,0\n"), ParseError);
  CHECK_THROWS_AS(parse("1\n1,a 0,0\n0,0 1,0\n"), ParseError);
  CHECK_THROWS_AS(parse("1\n1,0 0,0\n0,0 1,0\n1,0\n"), ParseError);
}

}  // TEST_SUITE

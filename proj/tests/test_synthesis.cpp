#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include "gates.hpp"
#include "hamgen/errors.hpp"
#include "hamgen/pauli.hpp"
#include "hamgen/synthesis.hpp"
#include "oracles.hpp"

using namespace hamgen;
using std::numbers::pi;

TEST_SUITE("hamiltonian_synthesis") {

TEST_CASE("gate_matrix for named gates") {
  CHECK(gate_matrix(GateSpec::cnot()) == fixtures::cnot());
  CHECK(gate_matrix(GateSpec::toffoli()) == fixtures::toffoli());
  CHECK(gate_matrix(GateSpec::identity(1)) == ComplexMatrix::identity(2));
  CHECK(gate_matrix(GateSpec::ccx(2)) == fixtures::cnot());
  CHECK(gate_matrix(GateSpec::ccx(1)) == oracle::pauli_1q('X'));
}

TEST_CASE("GateSpec parsing") {
  CHECK(GateSpec::parse("cnot").kind == GateSpec::Kind::cnot);
  CHECK(GateSpec::parse("toffoli").qubits == 3);
  CHECK(GateSpec::parse("ccx:4").qubits == 4);
  CHECK(GateSpec::parse("identity").qubits == 1);
  CHECK(GateSpec::parse("identity:3").label() == "identity:3");
  CHECK_THROWS_AS(GateSpec::parse("swap"), ParseError);
  CHECK_THROWS_AS(GateSpec::parse("ccx:x"), ParseError);
  CHECK_THROWS_AS(GateSpec::parse("ccx:9"), BadDimension);
  CHECK_THROWS_AS(GateSpec::parse("file:/nonexistent/gate.txt"), ParseError);
}

TEST_CASE("custom gates are validated for unitarity") {
  CHECK_THROWS_AS(GateSpec::custom(ComplexMatrix{{1, 1}, {0, 1}}), NotUnitary);
  try {
    GateSpec::custom(ComplexMatrix{{2, 0}, {0, 1}}, "file:bad.txt");
    FAIL("expected NotUnitary");
  } catch (const NotUnitary& e) {
    CHECK(std::string(e.what()).find("||U^dag U - 1||_F = 3") != std::string::npos);
  }
  const auto path = std::string("hamgen_test_gate.txt");
  {
    std::ofstream f(path);
    f << "1\n0,0 1,0\n1,0 0,0\n";
  }
  const auto g = GateSpec::parse("file:" + path);
  CHECK(g.kind == GateSpec::Kind::custom);
  CHECK(gate_matrix(g) == oracle::pauli_1q('X'));
  std::remove(path.c_str());
}

TEST_CASE("projector Hamiltonians generate the controlled-X family") {
  SUBCASE("cnot") {
    const auto gen = projector_hamiltonian(GateSpec::cnot());
    CHECK(gen.t == pi / 4);
    CHECK(gen.h == fixtures::h_cnot());
    CHECK(oracle::frob(matrix_exp_hermitian(gen.h, gen.t), fixtures::cnot()) < 1e-10);
  }
  SUBCASE("toffoli") {
    const auto gen = projector_hamiltonian(GateSpec::toffoli());
    CHECK(gen.t == pi / 8);
    CHECK(gen.h == fixtures::h_toffoli());
    CHECK(oracle::frob(matrix_exp_hermitian(gen.h, gen.t), fixtures::toffoli()) < 1e-10);
  }
  SUBCASE("ccx:4 against a Taylor-series exponential") {
    const auto g = GateSpec::ccx(4);
    const auto gen = projector_hamiltonian(g);
    CHECK(gen.t == pi / 16);
    CHECK(oracle::frob(reconstruct(pauli_decompose(gen.h)), gen.h) < 1e-12);
    CHECK(interaction_order(pauli_decompose(gen.h)) == 4);
    CHECK(oracle::frob(oracle::expm_taylor(gen.h, gen.t), gate_matrix(g)) < 1e-10);
  }
  SUBCASE("every library size") {
    for (int n = 1; n <= 5; ++n) {
      const auto g = GateSpec::ccx(n);
      const auto gen = projector_hamiltonian(g);
      CHECK(oracle::frob(matrix_exp_hermitian(gen.h, gen.t), gate_matrix(g)) < 1e-10);
    }
  }
  CHECK_THROWS_AS(projector_hamiltonian(GateSpec::identity(2)), InputError);
}

TEST_CASE("make_shift examples") {
  const auto id_basis = spectral_decompose(ComplexMatrix::identity(4), MatrixKind::hermitian);
  CHECK(make_shift(id_basis, {0, 0, 0, 0}).matrix.frobenius_norm() == 0.0);

  const auto n1 = make_shift(id_basis, {1, 0, 0, 0});
  ComplexMatrix expected(4);
  expected(0, 0) = 2 * pi;
  CHECK(oracle::frob(n1.matrix, expected) < 1e-15);

  const auto cnot_basis = spectral_decompose(fixtures::cnot(), MatrixKind::unitary);
  const auto s = make_shift(cnot_basis, {1, -1, 2, 0});
  CHECK(s.matrix.is_hermitian(1e-10));
  CHECK(oracle::frob(oracle::expm_taylor(s.matrix, 1.0), ComplexMatrix::identity(4)) < 1e-9);

  CHECK_THROWS_AS(make_shift(cnot_basis, {1, 2, 3}), DimensionMismatch);
}

TEST_CASE("shifted_hamiltonian examples") {
  const auto gen = projector_hamiltonian(GateSpec::cnot());
  const auto basis = spectral_decompose(gen.h, MatrixKind::hermitian);

  CHECK(shifted_hamiltonian(gen.h, gen.t, make_shift(basis, {0, 0, 0, 0})) == gen.h);

  const auto uniform = shifted_hamiltonian(gen.h, gen.t, make_shift(basis, {1, 1, 1, 1}));
  CHECK(oracle::frob(uniform, gen.h + ComplexMatrix::identity(4) * 8.0) < 1e-12);
  CHECK(oracle::frob(matrix_exp_hermitian(uniform, gen.t), fixtures::cnot()) < 1e-9);

  CHECK_THROWS_AS(shifted_hamiltonian(gen.h, 0.0, make_shift(basis, {0, 0, 0, 0})), ZeroTime);

  const auto tgen = projector_hamiltonian(GateSpec::toffoli());
  const auto tbasis = spectral_decompose(tgen.h, MatrixKind::hermitian);
  const auto shifted =
      shifted_hamiltonian(tgen.h, tgen.t, make_shift(tbasis, {3, -1, 0, 2, -2, 1, 0, 5}));
  CHECK(oracle::frob(matrix_exp_hermitian(shifted, tgen.t), fixtures::toffoli()) < 1e-9);
}

TEST_CASE("property: shift operators exponentiate to the identity and commute") {
  for (const auto& g : {GateSpec::cnot(), GateSpec::toffoli()}) {
    const auto gen = projector_hamiltonian(g);
    const auto basis = spectral_decompose(gen.h, MatrixKind::hermitian);
    const std::size_t dim = gen.h.dim();
    std::mt19937_64 rng(100);
    std::uniform_int_distribution<int> pick(-3, 3);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<long long> ints(dim);
      for (auto& v : ints) v = pick(rng);
      const auto s = make_shift(basis, ints);
      CHECK(oracle::frob(oracle::expm_taylor(s.matrix, 1.0), ComplexMatrix::identity(dim)) <
            1e-9);
      CHECK(commutator(gen.h, s.matrix).frobenius_norm() < 1e-8);
    }
  }
}

TEST_CASE("property: eigenphases shift by 2*pi*n_k") {
  const auto tgen = projector_hamiltonian(GateSpec::toffoli());
  const auto basis = spectral_decompose(tgen.h, MatrixKind::hermitian);
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> pick(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<long long> ints(8);
    for (auto& v : ints) v = pick(rng);
    const auto shifted = shifted_hamiltonian(tgen.h, tgen.t, make_shift(basis, ints));
    std::vector<double> expected(8);
    for (std::size_t k = 0; k < 8; ++k)
      expected[k] = tgen.t * basis.eigenvalues[k].real() + 2 * pi * static_cast<double>(ints[k]);
    std::sort(expected.begin(), expected.end());
    const auto got = spectral_decompose(shifted * Complex{tgen.t, 0.0}, MatrixKind::hermitian);
    for (std::size_t k = 0; k < 8; ++k)
      CHECK(got.eigenvalues[k].real() == doctest::Approx(expected[k]).epsilon(1e-10));
  }
}

TEST_CASE("warm-up identity: exp of a 1-local sum factorizes") {
  const auto z = oracle::pauli_1q('Z');
  const auto x = oracle::pauli_1q('X');
  const auto i2 = ComplexMatrix::identity(2);
  const auto h = kron(z, i2) + kron(i2, x);
  const auto lhs = matrix_exp_hermitian(h, 1.0);
  const auto rhs = kron(matrix_exp_hermitian(z, 1.0), matrix_exp_hermitian(x, 1.0));
  CHECK(oracle::frob(lhs, rhs) < 1e-10);
}

}  // TEST_SUITE

#include "hamgen/synthesis.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "hamgen/errors.hpp"

namespace hamgen {
namespace {

int parse_qubits(std::string_view digits, std::string_view whole) {
  int value = 0;
  const auto* end = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(digits.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError("bad qubit count in gate '" + std::string(whole) + "'");
  }
  if (value < 1 || value > kMaxQubits) {
    throw BadDimension("gate '" + std::string(whole) + "' needs 1.." +
                       std::to_string(kMaxQubits) + " qubits");
  }
  return value;
}

const ComplexMatrix& one_minus_z() {
  static const ComplexMatrix m{{0.0, 0.0}, {0.0, 2.0}};
  return m;
}

const ComplexMatrix& one_minus_x() {
  static const ComplexMatrix m{{1.0, -1.0}, {-1.0, 1.0}};
  return m;
}

}  // namespace

GateSpec GateSpec::identity(int qubits) {
  if (qubits < 1 || qubits > kMaxQubits) throw BadDimension("identity qubit count");
  return GateSpec{Kind::identity, qubits, std::nullopt, "identity"};
}

GateSpec GateSpec::cnot() { return GateSpec{Kind::cnot, 2, std::nullopt, "cnot"}; }

GateSpec GateSpec::toffoli() {
  return GateSpec{Kind::toffoli, 3, std::nullopt, "toffoli"};
}

GateSpec GateSpec::ccx(int qubits) {
  if (qubits < 1 || qubits > kMaxQubits) throw BadDimension("ccx qubit count");
  return GateSpec{Kind::ccx, qubits, std::nullopt, "ccx:" + std::to_string(qubits)};
}

GateSpec GateSpec::custom(ComplexMatrix m, std::string source) {
  const int n = qubit_count(m.dim());
  if (n > kMaxQubits) throw BadDimension("custom gate larger than 6 qubits");
  if (!m.all_finite()) throw NotUnitary("gate '" + source + "' has non-finite entries");
  const double residual = m.unitarity_residual();
  if (residual > 1e-10) {
    throw NotUnitary("gate '" + source + "' is not unitary: ||U^dag U - 1||_F = " +
                     std::to_string(residual));
  }
  return GateSpec{Kind::custom, n, std::move(m), std::move(source)};
}

GateSpec GateSpec::parse(std::string_view text) {
  if (text == "identity") return identity(1);
  if (text == "cnot") return cnot();
  if (text == "toffoli") return toffoli();
  if (text.starts_with("identity:")) {
    auto g = identity(parse_qubits(text.substr(9), text));
    g.source = std::string(text);
    return g;
  }
  if (text.starts_with("ccx:")) return ccx(parse_qubits(text.substr(4), text));
  if (text.starts_with("file:")) {
    const std::string path(text.substr(5));
    return custom(read_matrix_file(path), std::string(text));
  }
  throw ParseError("unknown gate '" + std::string(text) +
                   "' (expected identity, cnot, toffoli, ccx:<n> or file:<path>)");
}

std::string GateSpec::label() const {
  if (kind == Kind::identity && qubits != 1) return "identity:" + std::to_string(qubits);
  return source;
}

ComplexMatrix gate_matrix(const GateSpec& g) {
  const std::size_t dim = std::size_t{1} << g.qubits;
  switch (g.kind) {
    case GateSpec::Kind::identity:
      return ComplexMatrix::identity(dim);
    case GateSpec::Kind::cnot:
    case GateSpec::Kind::toffoli:
    case GateSpec::Kind::ccx: {
      ComplexMatrix m = ComplexMatrix::identity(dim);
      m(dim - 2, dim - 2) = m(dim - 1, dim - 1) = 0.0;
      m(dim - 2, dim - 1) = m(dim - 1, dim - 2) = 1.0;
      return m;
    }
    case GateSpec::Kind::custom:
      return *g.matrix;
  }
  throw InputError("unknown gate kind");
}

TimedHamiltonian projector_hamiltonian(const GateSpec& g) {
  if (!g.is_controlled_x()) {
    throw InputError("gate '" + g.label() +
                     "' has no built-in projector Hamiltonian");
  }
  ComplexMatrix h = one_minus_x();
  for (int q = 1; q < g.qubits; ++q) h = kron(one_minus_z(), h);
  return {std::move(h), std::numbers::pi / static_cast<double>(1 << g.qubits)};
}

ShiftOperator make_shift(const SpectralDecomposition& base,
                         std::vector<long long> integers) {
  if (integers.size() != base.dim()) {
    throw DimensionMismatch("shift has " + std::to_string(integers.size()) +
                            " integers for a " + std::to_string(base.dim()) +
                            "-dimensional eigenbasis");
  }
  std::vector<double> diag(integers.size());
  for (std::size_t k = 0; k < diag.size(); ++k)
    diag[k] = 2.0 * std::numbers::pi * static_cast<double>(integers[k]);
  ComplexMatrix n = conjugate_diagonal(base.eigenvectors, std::span<const double>(diag));
  return ShiftOperator{base, std::move(integers), std::move(n)};
}

ComplexMatrix shifted_hamiltonian(const ComplexMatrix& h, double t,
                                  const ShiftOperator& shift) {
  if (t == 0.0) throw ZeroTime("shifted Hamiltonian needs t != 0");
  if (h.dim() != shift.matrix.dim()) {
    throw DimensionMismatch("Hamiltonian and shift operator dimensions differ");
  }
  return h + shift.matrix * Complex{1.0 / t, 0.0};
}

}  // namespace hamgen

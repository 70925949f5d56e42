#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hamgen/matrix.hpp"
#include "hamgen/spectral.hpp"

namespace hamgen {

/// A gate from the built-in library or a user-supplied unitary.
///
/// The multiply-controlled X family flips the last qubit when every other
/// qubit is 1: on n qubits it swaps basis states 2^n−2 and 2^n−1. `cnot` and
/// `toffoli` are the n = 2 and n = 3 members.
struct GateSpec {
  enum class Kind { identity, cnot, toffoli, ccx, custom };

  Kind kind = Kind::identity;
  int qubits = 1;
  std::optional<ComplexMatrix> matrix;  // custom only
  std::string source;                   // text the spec was parsed from

  static GateSpec identity(int qubits = 1);
  static GateSpec cnot();
  static GateSpec toffoli();
  static GateSpec ccx(int qubits);
  /// Throws NotUnitary (naming the residual) or BadDimension.
  static GateSpec custom(ComplexMatrix m, std::string source = "custom");

  /// Accepts `identity`, `identity:<n>`, `cnot`, `toffoli`, `ccx:<n>` and
  /// `file:<path>`. Throws ParseError for anything else.
  static GateSpec parse(std::string_view text);

  bool is_controlled_x() const {
    return kind == Kind::cnot || kind == Kind::toffoli || kind == Kind::ccx;
  }
  std::string label() const;
};

inline constexpr int kMaxQubits = 6;

ComplexMatrix gate_matrix(const GateSpec& g);

/// A Hamiltonian together with the time at which it generates a gate.
struct TimedHamiltonian {
  ComplexMatrix h;
  double t = 0.0;
};

/// (1−σ_z)^{⊗(n−1)} ⊗ (1−σ_x) with t = π/2^n, which satisfies
/// exp(i·t·h) = gate_matrix(g) for the multiply-controlled X family.
/// Throws InputError for other gates.
TimedHamiltonian projector_hamiltonian(const GateSpec& g);

/// N = 2π·A·diag(n_1, …, n_d)·A† on a fixed eigenbasis A. Any such N has
/// exp(iN) = 1 and commutes with every operator diagonal in A.
struct ShiftOperator {
  SpectralDecomposition base;
  std::vector<long long> integers;
  ComplexMatrix matrix;
};

/// Throws DimensionMismatch when integers.size() != base.dim().
ShiftOperator make_shift(const SpectralDecomposition& base,
                         std::vector<long long> integers);

/// h + N/t, so that exp(i·t·h') = exp(i·t·h). Throws ZeroTime.
ComplexMatrix shifted_hamiltonian(const ComplexMatrix& h, double t,
                                  const ShiftOperator& shift);

}  // namespace hamgen

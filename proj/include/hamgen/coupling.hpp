#pragma once

#include <string>
#include <vector>

#include "hamgen/matrix.hpp"

namespace hamgen {

/// Coupling strengths of a diagonal Hamiltonian in the σ_z-string basis.
/// alpha[k] multiplies the string with σ_z on qubit i exactly when bit i of
/// k is set, qubit 0 being the most significant bit.
struct CouplingVector {
  int qubits = 0;
  std::vector<double> alpha;
};

/// Energy levels of a diagonal Hamiltonian in computational-basis order.
struct SpectrumVector {
  int qubits = 0;
  std::vector<double> epsilon;
};

/// Row-major ±1 matrix.
struct SignMatrix {
  std::size_t dim = 0;
  std::vector<int> entries;
  int operator()(std::size_t row, std::size_t col) const {
    return entries[row * dim + col];
  }
};

/// M_jk = (−1)^{popcount(j & k)} for 1 ≤ n ≤ 6.
SignMatrix hadamard_matrix(int qubits);

/// ε = M·α.
SpectrumVector couplings_to_spectrum(const CouplingVector& a);
/// α = M·ε / 2^n.
CouplingVector spectrum_to_couplings(const SpectrumVector& e);

/// Σ_k α_k·(σ_z-string k) as a dense matrix.
ComplexMatrix diagonal_hamiltonian(const CouplingVector& a);

/// Label of the σ_z-string for index k, e.g. k = 1 on two qubits is "IZ".
std::string z_string_label(int qubits, std::size_t index);

}  // namespace hamgen

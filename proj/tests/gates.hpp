#pragma once

// Gate and Hamiltonian literals written out by hand for tests.

#include "hamgen/matrix.hpp"

namespace fixtures {

using hamgen::ComplexMatrix;

inline ComplexMatrix cnot() {
  return ComplexMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
}

inline ComplexMatrix toffoli() {
  ComplexMatrix m = ComplexMatrix::identity(8);
  m(6, 6) = m(7, 7) = 0.0;
  m(6, 7) = m(7, 6) = 1.0;
  return m;
}

// (1−σ_z)⊗(1−σ_x) = [[0,0],[0,2]] ⊗ [[1,−1],[−1,1]]
inline ComplexMatrix h_cnot() {
  return ComplexMatrix{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 2, -2}, {0, 0, -2, 2}};
}

// (1−σ_z)⊗(1−σ_z)⊗(1−σ_x): only the |11⟩ control block is nonzero.
inline ComplexMatrix h_toffoli() {
  ComplexMatrix m(8);
  m(6, 6) = m(7, 7) = 4.0;
  m(6, 7) = m(7, 6) = -4.0;
  return m;
}

}  // namespace fixtures

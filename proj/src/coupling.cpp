#include "hamgen/coupling.hpp"

#include <bit>

#include "hamgen/errors.hpp"

namespace hamgen {
namespace {

void check_vector(int qubits, std::size_t length, const char* what) {
  if (qubits < 1 || qubits > 6) {
    throw BadDimension(std::string(what) + ": qubit count " +
                       std::to_string(qubits) + " outside 1..6");
  }
  const std::size_t dim = std::size_t{1} << qubits;
  if (length != dim) {
    throw DimensionMismatch(std::string(what) + " has " + std::to_string(length) +
                            " entries, expected " + std::to_string(dim));
  }
}

// In-place Walsh–Hadamard butterfly; equals multiplication by M.
void walsh_hadamard(std::vector<double>& v) {
  for (std::size_t h = 1; h < v.size(); h *= 2) {
    for (std::size_t i = 0; i < v.size(); i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j], b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

}  // namespace

SignMatrix hadamard_matrix(int qubits) {
  if (qubits < 1 || qubits > 6) throw BadDimension("hadamard_matrix needs 1..6 qubits");
  const std::size_t dim = std::size_t{1} << qubits;
  SignMatrix m{dim, std::vector<int>(dim * dim)};
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t k = 0; k < dim; ++k)
      m.entries[j * dim + k] = (std::popcount(j & k) % 2) ? -1 : 1;
  return m;
}

SpectrumVector couplings_to_spectrum(const CouplingVector& a) {
  check_vector(a.qubits, a.alpha.size(), "coupling vector");
  SpectrumVector out{a.qubits, a.alpha};
  walsh_hadamard(out.epsilon);
  return out;
}

CouplingVector spectrum_to_couplings(const SpectrumVector& e) {
  check_vector(e.qubits, e.epsilon.size(), "spectrum vector");
  CouplingVector out{e.qubits, e.epsilon};
  walsh_hadamard(out.alpha);
  const double scale = 1.0 / static_cast<double>(out.alpha.size());
  for (auto& x : out.alpha) x *= scale;
  return out;
}

ComplexMatrix diagonal_hamiltonian(const CouplingVector& a) {
  check_vector(a.qubits, a.alpha.size(), "coupling vector");
  const std::size_t dim = a.alpha.size();
  ComplexMatrix h(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    if (a.alpha[k] == 0.0) continue;
    for (std::size_t j = 0; j < dim; ++j)
      h(j, j) += (std::popcount(j & k) % 2) ? -a.alpha[k] : a.alpha[k];
  }
  return h;
}

std::string z_string_label(int qubits, std::size_t index) {
  std::string label(qubits, 'I');
  for (int q = 0; q < qubits; ++q)
    if (index & (std::size_t{1} << (qubits - 1 - q))) label[q] = 'Z';
  return label;
}

}  // namespace hamgen

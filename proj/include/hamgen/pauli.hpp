#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hamgen/matrix.hpp"

namespace hamgen {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// Tensor product of single-qubit Paulis. Letter 0 is qubit 0, the leftmost
/// tensor factor, which is the most significant bit of a basis-state index.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<Pauli> letters)
      : letters_(std::move(letters)) {}
  /// Parses "IXYZ"-style text; throws ParseError on other characters.
  static PauliString parse(std::string_view text);
  static PauliString identity(int qubits);

  int qubits() const { return static_cast<int>(letters_.size()); }
  Pauli operator[](int qubit) const { return letters_[qubit]; }
  const std::vector<Pauli>& letters() const { return letters_; }

  /// Number of non-identity letters.
  int weight() const;
  std::string str() const;
  ComplexMatrix as_matrix() const;

  /// Bit mask (in basis-index convention) of qubits carrying X or Y.
  std::uint32_t flip_mask() const;
  /// Bit mask of qubits carrying Z or Y.
  std::uint32_t phase_mask() const;
  /// Entry at (row, row ^ flip_mask()), the single nonzero in that row.
  Complex row_entry(std::uint32_t row) const;

  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> letters_;
};

/// Real Pauli-basis expansion of a Hermitian operator.
class PauliDecomposition {
 public:
  using Map = std::map<PauliString, double>;

  explicit PauliDecomposition(int qubits) : qubits_(qubits) {}
  PauliDecomposition(int qubits, Map coeffs);

  int qubits() const { return qubits_; }
  const Map& coeffs() const { return coeffs_; }
  /// Zero for strings that are not stored.
  double coeff(const PauliString& s) const;
  double coeff(std::string_view s) const { return coeff(PauliString::parse(s)); }

 private:
  int qubits_;
  Map coeffs_;
};

inline constexpr double kDropTolerance = 1e-12;
inline constexpr double kWeightTolerance = 1e-9;

/// coeffs[s] = Tr(s·h)/2^n, dropping |c| < drop_tol. Throws NotHermitian or
/// BadDimension.
PauliDecomposition pauli_decompose(const ComplexMatrix& h,
                                   double drop_tol = kDropTolerance);

/// Largest weight among strings with |coeff| ≥ weight_tol; 0 when none.
int interaction_order(const PauliDecomposition& d,
                      double weight_tol = kWeightTolerance);

ComplexMatrix reconstruct(const PauliDecomposition& d);

/// Every string on n qubits with weight ≤ k, in lexicographic I<X<Y<Z order.
std::vector<PauliString> strings_of_weight_at_most(int n, int k);

/// Precomputed flip masks and row phases for all 4^n strings; lets hot loops
/// evaluate Tr(s·h) in O(2^n) per string without building matrices.
class PauliTable {
 public:
  explicit PauliTable(int qubits);

  int qubits() const { return qubits_; }
  std::size_t size() const { return strings_.size(); }
  const PauliString& string(std::size_t i) const { return strings_[i]; }
  int weight(std::size_t i) const { return weights_[i]; }

  /// Tr(s_i·h)/2^n (complex; imaginary part is zero for Hermitian h).
  Complex coefficient(std::size_t i, const ComplexMatrix& h) const;
  /// v†·s_i·v.
  Complex expectation(std::size_t i, std::span<const Complex> v) const;
  /// Strings of weight ≥ 1, highest weight first (stable within a weight).
  const std::vector<std::size_t>& by_weight_desc() const { return by_weight_desc_; }

  /// Interaction order of h without materializing the decomposition. Scans
  /// strings from the highest weight down and stops at the first hit.
  int interaction_order(const ComplexMatrix& h,
                        double weight_tol = kWeightTolerance) const;

 private:
  int qubits_;
  std::size_t dim_;
  std::vector<PauliString> strings_;
  std::vector<int> weights_;
  std::vector<std::uint32_t> flips_;
  std::vector<Complex> phases_;  // strings × rows
  std::vector<std::size_t> by_weight_desc_;
};

}  // namespace hamgen

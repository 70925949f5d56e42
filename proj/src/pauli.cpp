#include "hamgen/pauli.hpp"

#include <algorithm>
#include <cmath>

#include "hamgen/errors.hpp"

namespace hamgen {
namespace {

char letter_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

std::uint32_t qubit_bit(int qubits, int qubit) {
  return std::uint32_t{1} << (qubits - 1 - qubit);
}

}  // namespace

PauliString PauliString::parse(std::string_view text) {
  std::vector<Pauli> letters;
  letters.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case 'I': letters.push_back(Pauli::I); break;
      case 'X': letters.push_back(Pauli::X); break;
      case 'Y': letters.push_back(Pauli::Y); break;
      case 'Z': letters.push_back(Pauli::Z); break;
      default:
        throw ParseError("bad Pauli letter '" + std::string(1, c) + "' in '" +
                         std::string(text) + "'");
    }
  }
  return PauliString(std::move(letters));
}

PauliString PauliString::identity(int qubits) {
  return PauliString(std::vector<Pauli>(qubits, Pauli::I));
}

int PauliString::weight() const {
  return static_cast<int>(std::count_if(letters_.begin(), letters_.end(),
                                        [](Pauli p) { return p != Pauli::I; }));
}

std::string PauliString::str() const {
  std::string out;
  out.reserve(letters_.size());
  for (auto p : letters_) out.push_back(letter_char(p));
  return out;
}

std::uint32_t PauliString::flip_mask() const {
  std::uint32_t mask = 0;
  for (int q = 0; q < qubits(); ++q)
    if (letters_[q] == Pauli::X || letters_[q] == Pauli::Y)
      mask |= qubit_bit(qubits(), q);
  return mask;
}

std::uint32_t PauliString::phase_mask() const {
  std::uint32_t mask = 0;
  for (int q = 0; q < qubits(); ++q)
    if (letters_[q] == Pauli::Z || letters_[q] == Pauli::Y)
      mask |= qubit_bit(qubits(), q);
  return mask;
}

Complex PauliString::row_entry(std::uint32_t row) const {
  Complex value{1.0, 0.0};
  for (int q = 0; q < qubits(); ++q) {
    const bool bit = (row & qubit_bit(qubits(), q)) != 0;
    switch (letters_[q]) {
      case Pauli::I:
      case Pauli::X: break;
      case Pauli::Y: value *= bit ? Complex{0.0, 1.0} : Complex{0.0, -1.0}; break;
      case Pauli::Z: if (bit) value = -value; break;
    }
  }
  return value;
}

ComplexMatrix PauliString::as_matrix() const {
  const std::size_t dim = std::size_t{1} << qubits();
  const auto flip = flip_mask();
  ComplexMatrix m(dim);
  for (std::uint32_t r = 0; r < dim; ++r) m(r, r ^ flip) = row_entry(r);
  return m;
}

PauliDecomposition::PauliDecomposition(int qubits, Map coeffs)
    : qubits_(qubits), coeffs_(std::move(coeffs)) {
  for (const auto& [s, c] : coeffs_) {
    if (s.qubits() != qubits_) {
      throw DimensionMismatch("string " + s.str() + " does not act on " +
                              std::to_string(qubits_) + " qubits");
    }
    if (!std::isfinite(c)) throw InputError("non-finite coefficient on " + s.str());
  }
}

double PauliDecomposition::coeff(const PauliString& s) const {
  auto it = coeffs_.find(s);
  return it == coeffs_.end() ? 0.0 : it->second;
}

PauliDecomposition pauli_decompose(const ComplexMatrix& h, double drop_tol) {
  const int n = qubit_count(h.dim());
  if (!h.is_hermitian(1e-10)) {
    throw NotHermitian("matrix is not Hermitian (residual " +
                       std::to_string(h.hermiticity_residual()) + ")");
  }
  const PauliTable table(n);
  const double imag_tol = 1e-10 * std::max(1.0, h.max_abs());
  PauliDecomposition::Map coeffs;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Complex c = table.coefficient(i, h);
    if (std::abs(c.imag()) > imag_tol) {
      throw NotHermitian("coefficient of " + table.string(i).str() +
                         " has imaginary part " + std::to_string(c.imag()));
    }
    if (std::abs(c.real()) >= drop_tol) coeffs.emplace(table.string(i), c.real());
  }
  return PauliDecomposition(n, std::move(coeffs));
}

int interaction_order(const PauliDecomposition& d, double weight_tol) {
  int order = 0;
  for (const auto& [s, c] : d.coeffs())
    if (std::abs(c) >= weight_tol) order = std::max(order, s.weight());
  return order;
}

ComplexMatrix reconstruct(const PauliDecomposition& d) {
  const std::size_t dim = std::size_t{1} << d.qubits();
  ComplexMatrix m(dim);
  for (const auto& [s, c] : d.coeffs()) {
    const auto flip = s.flip_mask();
    for (std::uint32_t r = 0; r < dim; ++r) m(r, r ^ flip) += c * s.row_entry(r);
  }
  return m;
}

std::vector<PauliString> strings_of_weight_at_most(int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    throw InputError("need 0 <= k <= n, got n=" + std::to_string(n) +
                     " k=" + std::to_string(k));
  }
  std::vector<PauliString> out;
  const std::size_t total = std::size_t{1} << (2 * n);
  std::vector<Pauli> letters(n);
  for (std::size_t code = 0; code < total; ++code) {
    int weight = 0;
    for (int q = 0; q < n; ++q) {
      const auto digit = (code >> (2 * (n - 1 - q))) & 3U;
      letters[q] = static_cast<Pauli>(digit);
      weight += digit != 0;
    }
    if (weight <= k) out.emplace_back(letters);
  }
  return out;
}

PauliTable::PauliTable(int qubits)
    : qubits_(qubits),
      dim_(std::size_t{1} << qubits),
      strings_(strings_of_weight_at_most(qubits, qubits)) {
  weights_.reserve(strings_.size());
  flips_.reserve(strings_.size());
  phases_.reserve(strings_.size() * dim_);
  for (const auto& s : strings_) {
    weights_.push_back(s.weight());
    flips_.push_back(s.flip_mask());
    for (std::uint32_t r = 0; r < dim_; ++r) phases_.push_back(s.row_entry(r));
  }
  for (std::size_t i = 0; i < strings_.size(); ++i)
    if (weights_[i] > 0) by_weight_desc_.push_back(i);
  std::stable_sort(by_weight_desc_.begin(), by_weight_desc_.end(),
                   [&](std::size_t a, std::size_t b) {
                     return weights_[a] > weights_[b];
                   });
}

Complex PauliTable::coefficient(std::size_t i, const ComplexMatrix& h) const {
  const auto flip = flips_[i];
  const Complex* phase = phases_.data() + i * dim_;
  Complex sum{};
  for (std::uint32_t r = 0; r < dim_; ++r) sum += phase[r] * h(r ^ flip, r);
  return sum / static_cast<double>(dim_);
}

Complex PauliTable::expectation(std::size_t i,
                                std::span<const Complex> v) const {
  const auto flip = flips_[i];
  const Complex* phase = phases_.data() + i * dim_;
  Complex sum{};
  for (std::uint32_t r = 0; r < dim_; ++r)
    sum += std::conj(v[r]) * phase[r] * v[r ^ flip];
  return sum;
}

int PauliTable::interaction_order(const ComplexMatrix& h,
                                  double weight_tol) const {
  for (auto i : by_weight_desc_) {
    if (std::abs(coefficient(i, h).real()) >= weight_tol) return weights_[i];
  }
  return 0;
}

}  // namespace hamgen

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace hamgen {

using Complex = std::complex<double>;

/// Dense square complex matrix stored row-major.
///
/// This is the carrier for gate unitaries and their generating Hamiltonians.
/// Dimensions are small (at most 64 for six qubits), so everything is plain
/// O(dim^3) arithmetic on a contiguous buffer.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix diagonal(std::span<const double> diag);

  std::size_t dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  Complex& operator()(std::size_t row, std::size_t col) {
    return data_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  std::span<const Complex> entries() const { return data_; }
  std::span<Complex> entries() { return data_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  bool is_hermitian(double tol = 1e-10) const;
  bool is_unitary(double tol = 1e-10) const;
  /// ‖m − m†‖_F.
  double hermiticity_residual() const;
  /// ‖m†m − 1‖_F.
  double unitarity_residual() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    return lhs += rhs;
  }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    return lhs -= rhs;
  }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs,
                                 const ComplexMatrix& rhs);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// ‖a − b‖_F; throws DimensionMismatch.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// A·diag(values)·A†.
ComplexMatrix conjugate_diagonal(const ComplexMatrix& basis,
                                 std::span<const Complex> values);
ComplexMatrix conjugate_diagonal(const ComplexMatrix& basis,
                                 std::span<const double> values);

bool is_power_of_two(std::size_t value);
/// log2 of a power-of-two dimension; throws BadDimension otherwise.
int qubit_count(std::size_t dim);

/// Text format: first line is the qubit count n, followed by 2^n rows of
/// 2^n whitespace separated `re,im` tokens.
ComplexMatrix read_matrix_text(std::istream& in);
ComplexMatrix read_matrix_file(const std::string& path);
void write_matrix_text(std::ostream& out, const ComplexMatrix& m);

}  // namespace hamgen

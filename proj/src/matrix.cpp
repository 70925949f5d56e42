#include "hamgen/matrix.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "hamgen/errors.hpp"

namespace hamgen {

ComplexMatrix::ComplexMatrix(std::size_t dim)
    : dim_(dim), data_(dim * dim, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim_ * dim_) {
    throw DimensionMismatch("matrix buffer has " +
                            std::to_string(data_.size()) +
                            " entries, expected " + std::to_string(dim * dim));
  }
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) {
      throw DimensionMismatch("matrix literal is not square");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < dim_; ++i) sum += (*this)(i, i);
  return sum;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const auto& z : data_) sum += std::norm(z);
  return std::sqrt(sum);
}

double ComplexMatrix::max_abs() const {
  double best = 0.0;
  for (const auto& z : data_) best = std::max(best, std::abs(z));
  return best;
}

double ComplexMatrix::hermiticity_residual() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      sum += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
  return std::sqrt(sum);
}

double ComplexMatrix::unitarity_residual() const {
  return frobenius_distance(adjoint() * (*this), identity(dim_));
}

bool ComplexMatrix::is_hermitian(double tol) const {
  return all_finite() && hermiticity_residual() <= tol;
}

bool ComplexMatrix::is_unitary(double tol) const {
  return all_finite() && unitarity_residual() <= tol;
}

bool ComplexMatrix::all_finite() const {
  for (const auto& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rhs.dim_ != dim_) throw DimensionMismatch("matrix sum");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rhs.dim_ != dim_) throw DimensionMismatch("matrix difference");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.dim_ != rhs.dim_) throw DimensionMismatch("matrix product");
  const std::size_t n = lhs.dim_;
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("distance between " + std::to_string(a.dim()) +
                            "x" + std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()) + "x" +
                            std::to_string(b.dim()) + " matrices");
  }
  double sum = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) sum += std::norm(ea[i] - eb[i]);
  return std::sqrt(sum);
}

ComplexMatrix conjugate_diagonal(const ComplexMatrix& basis,
                                 std::span<const Complex> values) {
  const std::size_t n = basis.dim();
  if (values.size() != n) throw DimensionMismatch("diagonal length");
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex scaled = basis(i, k) * values[k];
      if (scaled == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += scaled * std::conj(basis(j, k));
    }
  }
  return out;
}

ComplexMatrix conjugate_diagonal(const ComplexMatrix& basis,
                                 std::span<const double> values) {
  std::vector<Complex> promoted(values.begin(), values.end());
  return conjugate_diagonal(basis, std::span<const Complex>(promoted));
}

bool is_power_of_two(std::size_t value) {
  return value != 0 && (value & (value - 1)) == 0;
}

int qubit_count(std::size_t dim) {
  if (!is_power_of_two(dim)) {
    throw BadDimension("dimension " + std::to_string(dim) +
                       " is not a power of two");
  }
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

namespace {

double parse_double(const std::string& text, int line) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || !std::isfinite(value)) {
    throw ParseError("line " + std::to_string(line) + ": bad number '" + text +
                     "'");
  }
  return value;
}

}  // namespace

ComplexMatrix read_matrix_text(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line()) throw ParseError("empty matrix file");
  int qubits = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> qubits) || (header >> extra)) {
      throw ParseError("line 1: expected the qubit count");
    }
  }
  if (qubits < 1 || qubits > 6) {
    throw BadDimension("qubit count " + std::to_string(qubits) +
                       " outside 1..6");
  }
  const std::size_t dim = std::size_t{1} << qubits;
  ComplexMatrix m(dim);
  for (std::size_t row = 0; row < dim; ++row) {
    if (!next_line()) {
      throw ParseError("expected " + std::to_string(dim) +
                       " matrix rows, found " + std::to_string(row));
    }
    std::istringstream tokens(line);
    std::string token;
    std::size_t col = 0;
    while (tokens >> token) {
      if (col >= dim) {
        throw ParseError("line " + std::to_string(line_no) + ": more than " +
                         std::to_string(dim) + " entries");
      }
      const auto comma = token.find(',');
      if (comma == std::string::npos) {
        throw ParseError("line " + std::to_string(line_no) + ": token '" +
                         token + "' is not of the form re,im");
      }
      m(row, col) = Complex{parse_double(token.substr(0, comma), line_no),
                            parse_double(token.substr(comma + 1), line_no)};
      ++col;
    }
    if (col != dim) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(dim) + " entries, found " +
                       std::to_string(col));
    }
  }
  if (next_line()) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": trailing content after matrix rows");
  }
  return m;
}

ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file '" + path + "'");
  return read_matrix_text(in);
}

void write_matrix_text(std::ostream& out, const ComplexMatrix& m) {
  const int n = qubit_count(m.dim());
  const auto old_precision = out.precision();
  out << n << '\n' << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j) out << ' ';
      out << m(i, j).real() << ',' << m(i, j).imag();
    }
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace hamgen

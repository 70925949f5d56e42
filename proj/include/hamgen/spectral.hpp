#pragma once

#include <cstddef>
#include <vector>

#include "hamgen/matrix.hpp"

namespace hamgen {

enum class MatrixKind { hermitian, unitary };

/// Eigenvalues plus the unitary matrix A whose columns are the matching
/// orthonormal eigenvectors, so that m = A·diag(λ)·A†.
///
/// Ordering is deterministic: ascending value for Hermitian input, ascending
/// principal phase in (−π, π] for unitary input. Eigenvalues that agree to
/// within the clustering tolerance count as tied and keep solver order.
struct SpectralDecomposition {
  MatrixKind kind = MatrixKind::hermitian;
  std::vector<Complex> eigenvalues;
  ComplexMatrix eigenvectors;

  std::size_t dim() const { return eigenvalues.size(); }
  ComplexMatrix reconstruct() const;

  /// Partition of the indices into runs of (numerically) equal eigenvalues.
  /// Two eigenvalues are linked when |λ_i − λ_j| < cluster_tol·max(1, max|λ|);
  /// blocks are the connected components and are listed in index order.
  std::vector<std::vector<std::size_t>> degenerate_blocks(
      double cluster_tol = kClusterTolerance) const;

  static constexpr double kClusterTolerance = 1e-8;
};

struct EigenOptions {
  /// Classification tolerance applied before decomposing.
  double input_tolerance = 1e-10;
  /// Jacobi sweep cap; zero selects the default of 100·dim².
  std::size_t max_sweeps = 0;
  /// Relative bound on ‖A·diag(λ)·A† − m‖_F checked on every result.
  double residual_tolerance = 1e-9;
};

/// Throws NotNormal when the matrix fails the Hermitian (resp. unitary)
/// predicate and ConvergenceFailure when the sweep cap or residual bound is
/// exceeded.
SpectralDecomposition spectral_decompose(const ComplexMatrix& m,
                                         MatrixKind kind,
                                         const EigenOptions& options = {});

/// Phase of a unit-modulus eigenvalue in (−π, π]. Phases within
/// kPhaseSnap of −π are reported as +π, so −1 always maps to +π.
double principal_phase(Complex z);
inline constexpr double kPhaseSnap = 1e-9;

/// exp(i·scale·h) through the spectral decomposition of h.
ComplexMatrix matrix_exp_hermitian(const ComplexMatrix& h, double scale);

/// Principal logarithm: Hermitian H with exp(iH) = u and spectrum in
/// (−π, π]. Degenerate eigenvalue blocks share one phase, so the result does
/// not depend on the basis chosen inside a block.
ComplexMatrix principal_log(const ComplexMatrix& u);

/// Principal phases of a unitary decomposition, one per eigenvalue, made
/// constant across each degenerate block.
std::vector<double> block_phases(const SpectralDecomposition& unitary_spectrum);

}  // namespace hamgen

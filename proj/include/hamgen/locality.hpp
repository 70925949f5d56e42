#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hamgen/matrix.hpp"
#include "hamgen/pauli.hpp"
#include "hamgen/synthesis.hpp"

namespace hamgen {

/// One logarithm branch H' = A_s·diag(θ_k + 2π·n_k)·A_s† of a gate, where θ
/// are the principal eigenphases and A_s is basis sample s.
struct LogBranch {
  std::vector<long long> integers;
  std::size_t basis_sample = 0;
  ComplexMatrix hamiltonian;
  PauliDecomposition decomposition{1};
  int weight = 0;
};

struct BranchSearchOptions {
  /// Branches re-verified through an explicit matrix exponential.
  std::size_t spot_checks = 1000;
  /// Worker threads; zero means std::thread::hardware_concurrency().
  unsigned threads = 0;
  double weight_tol = kWeightTolerance;
};

struct BranchReport {
  GateSpec gate;
  int bound = 0;
  int basis_samples = 0;
  std::uint64_t seed = 0;

  /// Bases actually enumerated: 1 + basis_samples when the spectrum has a
  /// degenerate block, otherwise 1 (rotating a 1-dimensional block is a no-op).
  std::size_t bases_examined = 0;
  std::uint64_t branches_per_basis = 0;
  std::uint64_t branches_examined = 0;

  int min_weight = 0;
  LogBranch argmin;
  /// ‖exp(i·H_argmin) − U‖_F.
  double argmin_residual = 0.0;

  std::vector<double> principal_phases;
  std::vector<std::vector<std::size_t>> degenerate_blocks;
  std::size_t spot_checks = 0;
  double max_spot_residual = 0.0;
  double weight_tol = kWeightTolerance;
  double cluster_tol = SpectralDecomposition::kClusterTolerance;
};

inline constexpr std::uint64_t kMaxBranchCount = 100'000'000;
inline constexpr int kMaxSearchQubits = 4;

/// Enumerates every integer vector in [−bound, bound]^{2^n} on the gate's
/// eigenbasis and on `basis_samples` seeded Haar rotations of each
/// degenerate block, recording the lowest interaction order found.
///
/// Ties on weight go to the lexicographically smallest integer vector, then
/// the lowest basis-sample index, independent of thread count. Throws
/// SearchSpaceTooLarge when (2·bound+1)^{2^n} exceeds 10^8 or n > 4.
BranchReport enumerate_branches(const GateSpec& g, int bound, int basis_samples,
                                std::uint64_t seed,
                                const BranchSearchOptions& options = {});

/// Haar-distributed m×m unitary from a Ginibre matrix orthonormalized by
/// Gram–Schmidt; deterministic in (seed, stream).
ComplexMatrix haar_unitary(std::size_t m, std::uint64_t seed, std::uint64_t stream);

struct VariationalOptions {
  unsigned threads = 0;
  /// Stop a restart once the distance drops below this value.
  double target_distance = 1e-12;
};

struct VariationalReport {
  GateSpec gate;
  int locality = 0;
  std::size_t parameter_count = 0;
  int restarts = 0;
  int max_iters = 0;
  std::uint64_t seed = 0;
  std::string optimizer;

  std::vector<PauliString> strings;
  std::vector<double> best_theta;
  double best_distance = 0.0;
  int best_restart = 0;
  /// Best distance reached by each restart, in restart order.
  std::vector<double> history;
  std::vector<int> iterations;
};

/// h(θ) = Σ_s θ_s·s over the given strings.
ComplexMatrix local_hamiltonian(const std::vector<PauliString>& strings,
                                const std::vector<double>& theta);

/// Minimizes ‖exp(i·h(θ)) − U‖_F over all strings of weight ≤ k with
/// multi-start damped Gauss–Newton (Levenberg–Marquardt). Restart r starts
/// from θ uniform in [−π, π]^d drawn from a generator seeded with (seed, r).
VariationalReport variational_fit(const GateSpec& g, int locality, int restarts,
                                  int max_iters, std::uint64_t seed,
                                  const VariationalOptions& options = {});

/// ‖u − v‖_F. Throws DimensionMismatch.
double distance(const ComplexMatrix& u, const ComplexMatrix& v);

/// Derivative of exp(iH) in direction E at a Hermitian H with spectrum
/// (eigenvalues, eigenvectors), by the divided-difference formula.
ComplexMatrix exp_derivative(const std::vector<double>& eigenvalues,
                             const ComplexMatrix& eigenvectors,
                             const ComplexMatrix& direction);

}  // namespace hamgen

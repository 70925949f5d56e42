#include "hamgen/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "hamgen/errors.hpp"

namespace hamgen {
namespace {

struct JacobiResult {
  std::vector<double> values;
  ComplexMatrix vectors;
};

double off_diagonal_norm2(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j) sum += std::norm(a(i, j));
  return 2.0 * sum;
}

// Cyclic complex Jacobi. Each rotation is a diagonal phase that makes the
// (p,q) element real followed by the classic real Jacobi rotation.
JacobiResult jacobi_hermitian(ComplexMatrix a, std::size_t max_sweeps) {
  const std::size_t n = a.dim();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double norm = a.frobenius_norm();
  const double target = 1e-15 * norm;

  bool converged = norm == 0.0;
  for (std::size_t sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    if (std::sqrt(off_diagonal_norm2(a)) <= target) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= 1e-300 || r <= 1e-18 * norm) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const Complex phase = apq / r;  // e^{iφ}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex s_phase_conj = s * std::conj(phase);  // s·e^{−iφ}
        const Complex c_phase_conj = c * std::conj(phase);  // c·e^{−iφ}

        // a ← a·G with G = [[c, s], [−s·e^{−iφ}, c·e^{−iφ}]]
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s_phase_conj * akq;
          a(k, q) = s * akp + c_phase_conj * akq;
        }
        // a ← G†·a
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - std::conj(s_phase_conj) * aqk;
          a(q, k) = s * apk + std::conj(c_phase_conj) * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s_phase_conj * vkq;
          v(k, q) = s * vkp + c_phase_conj * vkq;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  if (!converged && std::sqrt(off_diagonal_norm2(a)) > target) {
    throw ConvergenceFailure("Jacobi eigensolver exceeded " +
                             std::to_string(max_sweeps) + " sweeps");
  }
  JacobiResult result{std::vector<double>(n), std::move(v)};
  for (std::size_t i = 0; i < n; ++i) result.values[i] = a(i, i).real();
  return result;
}

// Groups indices (already sorted by key) into runs whose neighbouring keys
// differ by less than tol.
std::vector<std::vector<std::size_t>> chain_clusters(
    const std::vector<std::size_t>& sorted, const std::vector<double>& keys,
    double tol) {
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t idx : sorted) {
    if (clusters.empty() ||
        std::abs(keys[idx] - keys[clusters.back().back()]) >= tol) {
      clusters.emplace_back();
    }
    clusters.back().push_back(idx);
  }
  return clusters;
}

std::vector<std::size_t> sorted_indices(const std::vector<double>& keys) {
  std::vector<std::size_t> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return keys[a] < keys[b];
  });
  return order;
}

// Columns of `vectors` restricted to `cols`, as a dim × cols.size() block,
// stored in a ComplexMatrix-like flat buffer.
struct ColumnBlock {
  std::size_t rows;
  std::size_t cols;
  std::vector<Complex> data;  // row-major
  Complex& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Complex& at(std::size_t i, std::size_t j) const {
    return data[i * cols + j];
  }
};

// Splits each cluster of the Hermitian part's spectrum using the
// skew-Hermitian part, which commutes with it for a normal matrix.
void refine_unitary_clusters(const ComplexMatrix& u, ComplexMatrix& vectors,
                             const std::vector<double>& herm_values,
                             std::size_t max_sweeps) {
  const std::size_t n = u.dim();
  ComplexMatrix skew(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      skew(i, j) = (u(i, j) - std::conj(u(j, i))) / Complex{0.0, 2.0};

  const auto order = sorted_indices(herm_values);
  for (const auto& cluster : chain_clusters(order, herm_values, 1e-6)) {
    const std::size_t m = cluster.size();
    if (m < 2) continue;
    ColumnBlock block{n, m, std::vector<Complex>(n * m)};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) block.at(i, j) = vectors(i, cluster[j]);

    // compressed = blockᴴ · skew · block
    ComplexMatrix compressed(m);
    std::vector<Complex> tmp(n * m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        Complex sum{};
        for (std::size_t k = 0; k < n; ++k) sum += skew(i, k) * block.at(k, j);
        tmp[i * m + j] = sum;
      }
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        Complex sum{};
        for (std::size_t k = 0; k < n; ++k)
          sum += std::conj(block.at(k, a)) * tmp[k * m + b];
        compressed(a, b) = sum;
      }
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a; b < m; ++b) {
        const Complex avg = 0.5 * (compressed(a, b) + std::conj(compressed(b, a)));
        compressed(a, b) = avg;
        compressed(b, a) = std::conj(avg);
      }

    const auto inner = jacobi_hermitian(std::move(compressed), max_sweeps);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        Complex sum{};
        for (std::size_t k = 0; k < m; ++k)
          sum += block.at(i, k) * inner.vectors(k, j);
        vectors(i, cluster[j]) = sum;
      }
  }
}

}  // namespace

double principal_phase(Complex z) {
  double phase = std::arg(z);
  if (phase <= -std::numbers::pi + kPhaseSnap) phase = std::numbers::pi;
  return phase;
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  return conjugate_diagonal(eigenvectors, std::span<const Complex>(eigenvalues));
}

std::vector<std::vector<std::size_t>> SpectralDecomposition::degenerate_blocks(
    double cluster_tol) const {
  const std::size_t n = eigenvalues.size();
  double scale = 1.0;
  for (const auto& z : eigenvalues) scale = std::max(scale, std::abs(z));
  const double tol = cluster_tol * scale;

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(eigenvalues[i] - eigenvalues[j]) < tol) {
        const auto ri = find(i), rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }

  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto root = find(i);
    if (slot[root] == n) {
      slot[root] = blocks.size();
      blocks.emplace_back();
    }
    blocks[slot[root]].push_back(i);
  }
  return blocks;
}

SpectralDecomposition spectral_decompose(const ComplexMatrix& m,
                                         MatrixKind kind,
                                         const EigenOptions& options) {
  const std::size_t n = m.dim();
  if (n == 0) throw BadDimension("empty matrix");
  const std::size_t max_sweeps =
      options.max_sweeps ? options.max_sweeps : 100 * n * n;

  std::vector<double> raw_values;
  ComplexMatrix vectors;
  if (kind == MatrixKind::hermitian) {
    if (!m.all_finite() || m.hermiticity_residual() > options.input_tolerance) {
      throw NotNormal("matrix is not Hermitian (residual " +
                      std::to_string(m.hermiticity_residual()) + ")");
    }
    ComplexMatrix sym(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        sym(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    auto jr = jacobi_hermitian(std::move(sym), max_sweeps);
    raw_values = std::move(jr.values);
    vectors = std::move(jr.vectors);
  } else {
    if (!m.all_finite() || m.unitarity_residual() > options.input_tolerance) {
      throw NotNormal("matrix is not unitary (residual " +
                      std::to_string(m.unitarity_residual()) + ")");
    }
    ComplexMatrix herm(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        herm(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    auto jr = jacobi_hermitian(std::move(herm), max_sweeps);
    vectors = std::move(jr.vectors);
    refine_unitary_clusters(m, vectors, jr.values, max_sweeps);
  }

  std::vector<Complex> values(n);
  std::vector<double> keys(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (kind == MatrixKind::hermitian) {
      values[k] = raw_values[k];
      keys[k] = raw_values[k];
    } else {
      // Rayleigh quotient v†·U·v
      Complex sum{};
      for (std::size_t i = 0; i < n; ++i) {
        Complex row{};
        for (std::size_t j = 0; j < n; ++j) row += m(i, j) * vectors(j, k);
        sum += std::conj(vectors(i, k)) * row;
      }
      values[k] = sum;
      keys[k] = principal_phase(sum);
    }
  }

  double scale = 1.0;
  for (const auto& z : values) scale = std::max(scale, std::abs(z));
  const double tie_tol = SpectralDecomposition::kClusterTolerance * scale;
  std::vector<std::size_t> order;
  for (auto cluster : chain_clusters(sorted_indices(keys), keys, tie_tol)) {
    std::sort(cluster.begin(), cluster.end());
    order.insert(order.end(), cluster.begin(), cluster.end());
  }

  SpectralDecomposition out;
  out.kind = kind;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = values[order[k]];
    for (std::size_t i = 0; i < n; ++i)
      out.eigenvectors(i, k) = vectors(i, order[k]);
  }

  const double residual = frobenius_distance(out.reconstruct(), m);
  if (residual > options.residual_tolerance * std::max(1.0, m.frobenius_norm())) {
    throw ConvergenceFailure("spectral reconstruction residual " +
                             std::to_string(residual) + " above tolerance");
  }
  return out;
}

std::vector<double> block_phases(const SpectralDecomposition& spectrum) {
  std::vector<double> phases(spectrum.dim());
  for (const auto& block : spectrum.degenerate_blocks()) {
    Complex mean{};
    for (auto idx : block) mean += spectrum.eigenvalues[idx];
    const double phase = principal_phase(mean);
    for (auto idx : block) phases[idx] = phase;
  }
  return phases;
}

ComplexMatrix matrix_exp_hermitian(const ComplexMatrix& h, double scale) {
  const auto spectrum = spectral_decompose(h, MatrixKind::hermitian);
  std::vector<Complex> values(spectrum.dim());
  for (std::size_t k = 0; k < values.size(); ++k)
    values[k] = std::polar(1.0, scale * spectrum.eigenvalues[k].real());
  return conjugate_diagonal(spectrum.eigenvectors, std::span<const Complex>(values));
}

ComplexMatrix principal_log(const ComplexMatrix& u) {
  const auto spectrum = spectral_decompose(u, MatrixKind::unitary);
  const auto phases = block_phases(spectrum);
  ComplexMatrix h =
      conjugate_diagonal(spectrum.eigenvectors, std::span<const double>(phases));
  for (std::size_t i = 0; i < h.dim(); ++i) {
    h(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < h.dim(); ++j) {
      const Complex avg = 0.5 * (h(i, j) + std::conj(h(j, i)));
      h(i, j) = avg;
      h(j, i) = std::conj(avg);
    }
  }
  return h;
}

}  // namespace hamgen

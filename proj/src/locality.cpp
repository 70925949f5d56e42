#include "hamgen/locality.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "hamgen/errors.hpp"
#include "hamgen/spectral.hpp"
#include "seeded_rng.hpp"

namespace hamgen {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

unsigned worker_count(unsigned requested, std::size_t work_items) {
  unsigned threads = requested ? requested : std::thread::hardware_concurrency();
  threads = std::max(1U, threads);
  return static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(1, work_items)));
}

// Runs body(worker_index) on `threads` workers and joins them.
template <typename Body>
void run_workers(unsigned threads, Body body) {
  if (threads == 1) {
    body(0U);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) pool.emplace_back([&body, w] { body(w); });
}

// ---------------------------------------------------------------------------
// Branch enumeration

struct Candidate {
  bool found = false;
  int weight = std::numeric_limits<int>::max();
  std::vector<long long> integers;
  std::size_t sample = 0;

  // Lower weight, then lexicographically smaller integers, then lower sample.
  bool better_than(const Candidate& other) const {
    if (!other.found) return found;
    if (!found) return false;
    if (weight != other.weight) return weight < other.weight;
    if (integers != other.integers) return integers < other.integers;
    return sample < other.sample;
  }
};

ComplexMatrix rotated_basis(const ComplexMatrix& base,
                            const std::vector<std::vector<std::size_t>>& blocks,
                            std::uint64_t seed, std::size_t sample) {
  if (sample == 0) return base;
  ComplexMatrix out = base;
  const std::size_t n = base.dim();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& block = blocks[b];
    const std::size_t m = block.size();
    if (m < 2) continue;
    const auto rotation = haar_unitary(m, seed, (std::uint64_t{sample} << 16) | b);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        Complex sum{};
        for (std::size_t l = 0; l < m; ++l) sum += base(i, block[l]) * rotation(l, j);
        out(i, block[j]) = sum;
      }
  }
  return out;
}

// Pauli coefficients are linear in the branch phases: c_s = Σ_k C[s][k]·φ_k
// with C[s][k] = a_k†·s·a_k / 2^n. Rows follow table.by_weight_desc().
std::vector<double> coefficient_map(const PauliTable& table,
                                    const ComplexMatrix& basis) {
  const std::size_t dim = basis.dim();
  const auto& order = table.by_weight_desc();
  std::vector<double> map(order.size() * dim);
  std::vector<Complex> column(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t i = 0; i < dim; ++i) column[i] = basis(i, k);
    for (std::size_t row = 0; row < order.size(); ++row)
      map[row * dim + k] =
          table.expectation(order[row], column).real() / static_cast<double>(dim);
  }
  return map;
}

std::vector<long long> decode_integers(std::uint64_t index, std::size_t dim,
                                       int bound) {
  const std::uint64_t radix = 2 * static_cast<std::uint64_t>(bound) + 1;
  std::vector<long long> out(dim);
  for (std::size_t k = dim; k-- > 0;) {
    out[k] = static_cast<long long>(index % radix) - bound;
    index /= radix;
  }
  return out;
}

// Lexicographic successor inside [−bound, bound]^dim; false on wrap-around.
bool next_integers(std::vector<long long>& v, int bound) {
  for (std::size_t k = v.size(); k-- > 0;) {
    if (v[k] < bound) {
      ++v[k];
      return true;
    }
    v[k] = -bound;
  }
  return false;
}

ComplexMatrix branch_hamiltonian(const ComplexMatrix& basis,
                                 const std::vector<double>& phases,
                                 const std::vector<long long>& integers) {
  std::vector<double> shifted(phases.size());
  for (std::size_t k = 0; k < phases.size(); ++k)
    shifted[k] = phases[k] + kTwoPi * static_cast<double>(integers[k]);
  ComplexMatrix h = conjugate_diagonal(basis, std::span<const double>(shifted));
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

// ---------------------------------------------------------------------------
// Variational fit

struct StringAction {
  std::uint32_t flip;
  std::vector<Complex> phases;
};

std::vector<StringAction> string_actions(const std::vector<PauliString>& strings) {
  std::vector<StringAction> out;
  out.reserve(strings.size());
  for (const auto& s : strings) {
    const std::size_t dim = std::size_t{1} << s.qubits();
    StringAction a{s.flip_mask(), std::vector<Complex>(dim)};
    for (std::uint32_t r = 0; r < dim; ++r) a.phases[r] = s.row_entry(r);
    out.push_back(std::move(a));
  }
  return out;
}

ComplexMatrix build_hamiltonian(const std::vector<StringAction>& actions,
                                std::size_t dim, const std::vector<double>& theta) {
  ComplexMatrix h(dim);
  for (std::size_t s = 0; s < actions.size(); ++s) {
    if (theta[s] == 0.0) continue;
    const auto& a = actions[s];
    for (std::uint32_t r = 0; r < dim; ++r) h(r, r ^ a.flip) += theta[s] * a.phases[r];
  }
  return h;
}

// Evaluation of exp(i·h(θ)) − U together with the spectrum needed for the
// analytic Jacobian.
struct Evaluation {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
  Eigen::VectorXd residual;  // [Re(E); Im(E)] row-major
  double cost = 0.0;         // ½‖residual‖²
};

Evaluation evaluate(const std::vector<StringAction>& actions,
                    const ComplexMatrix& target, const std::vector<double>& theta) {
  const std::size_t dim = target.dim();
  const auto spectrum =
      spectral_decompose(build_hamiltonian(actions, dim, theta), MatrixKind::hermitian);
  Evaluation ev;
  ev.eigenvalues.resize(dim);
  std::vector<Complex> phases(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    ev.eigenvalues[k] = spectrum.eigenvalues[k].real();
    phases[k] = std::polar(1.0, ev.eigenvalues[k]);
  }
  ev.eigenvectors = spectrum.eigenvectors;
  const ComplexMatrix diff =
      conjugate_diagonal(ev.eigenvectors, std::span<const Complex>(phases)) - target;
  const std::size_t cells = dim * dim;
  ev.residual.resize(2 * static_cast<Eigen::Index>(cells));
  auto e = diff.entries();
  for (std::size_t i = 0; i < cells; ++i) {
    ev.residual[static_cast<Eigen::Index>(i)] = e[i].real();
    ev.residual[static_cast<Eigen::Index>(cells + i)] = e[i].imag();
  }
  ev.cost = 0.5 * ev.residual.squaredNorm();
  return ev;
}

Eigen::MatrixXd jacobian(const std::vector<StringAction>& actions,
                         const Evaluation& ev) {
  const std::size_t dim = ev.eigenvectors.dim();
  const std::size_t cells = dim * dim;
  const ComplexMatrix& a = ev.eigenvectors;
  Eigen::MatrixXd jac(2 * static_cast<Eigen::Index>(cells),
                      static_cast<Eigen::Index>(actions.size()));
  ComplexMatrix direction(dim);
  for (std::size_t s = 0; s < actions.size(); ++s) {
    const auto& act = actions[s];
    direction = ComplexMatrix(dim);
    for (std::uint32_t r = 0; r < dim; ++r) direction(r, r ^ act.flip) = act.phases[r];
    const ComplexMatrix d = exp_derivative(ev.eigenvalues, a, direction);
    auto e = d.entries();
    const auto col = static_cast<Eigen::Index>(s);
    for (std::size_t i = 0; i < cells; ++i) {
      jac(static_cast<Eigen::Index>(i), col) = e[i].real();
      jac(static_cast<Eigen::Index>(cells + i), col) = e[i].imag();
    }
  }
  return jac;
}

struct RestartResult {
  std::vector<double> theta;
  double distance = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

// Levenberg–Marquardt with the Madsen–Nielsen damping update.
RestartResult levenberg_marquardt(const std::vector<StringAction>& actions,
                                  const ComplexMatrix& target,
                                  std::vector<double> theta, int max_iters,
                                  double target_distance) {
  const auto d = static_cast<Eigen::Index>(theta.size());
  Evaluation ev = evaluate(actions, target, theta);
  Eigen::MatrixXd jac = jacobian(actions, ev);
  Eigen::MatrixXd normal = jac.transpose() * jac;
  Eigen::VectorXd grad = jac.transpose() * ev.residual;
  double mu = 1e-3 * std::max(1e-12, normal.diagonal().maxCoeff());
  double nu = 2.0;

  int iter = 0;
  for (; iter < max_iters; ++iter) {
    if (std::sqrt(2.0 * ev.cost) <= target_distance) break;
    if (grad.lpNorm<Eigen::Infinity>() <= 1e-15) break;

    Eigen::MatrixXd damped = normal;
    damped.diagonal().array() += mu;
    const Eigen::VectorXd step = damped.ldlt().solve(-grad);
    Eigen::Map<const Eigen::VectorXd> current(theta.data(), d);
    if (!step.allFinite() || step.norm() <= 1e-15 * (current.norm() + 1e-15)) break;

    std::vector<double> trial(theta);
    for (Eigen::Index i = 0; i < d; ++i) trial[static_cast<std::size_t>(i)] += step[i];
    Evaluation next = evaluate(actions, target, trial);
    const double predicted = 0.5 * step.dot(mu * step - grad);
    const double rho = predicted > 0.0 ? (ev.cost - next.cost) / predicted : -1.0;
    if (rho > 0.0 && next.cost < ev.cost) {
      theta = std::move(trial);
      ev = std::move(next);
      jac = jacobian(actions, ev);
      normal = jac.transpose() * jac;
      grad = jac.transpose() * ev.residual;
      mu *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
      nu = 2.0;
    } else {
      mu *= nu;
      nu *= 2.0;
      if (!std::isfinite(mu) || mu > 1e30) break;
    }
  }
  return RestartResult{std::move(theta), std::sqrt(2.0 * ev.cost), iter};
}

}  // namespace

ComplexMatrix haar_unitary(std::size_t m, std::uint64_t seed, std::uint64_t stream) {
  detail::SeededRng rng(seed, stream);
  ComplexMatrix z(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      z(i, j) = Complex{rng.normal(), rng.normal()} / std::sqrt(2.0);
  // Modified Gram–Schmidt leaves a positive real diagonal in R, which is the
  // phase convention that makes Q Haar distributed.
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t p = 0; p < j; ++p) {
      Complex dot{};
      for (std::size_t i = 0; i < m; ++i) dot += std::conj(z(i, p)) * z(i, j);
      for (std::size_t i = 0; i < m; ++i) z(i, j) -= dot * z(i, p);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < m; ++i) norm += std::norm(z(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < m; ++i) z(i, j) /= norm;
  }
  return z;
}

BranchReport enumerate_branches(const GateSpec& g, int bound, int basis_samples,
                                std::uint64_t seed,
                                const BranchSearchOptions& options) {
  if (bound < 0) throw InputError("bound must be non-negative");
  if (basis_samples < 0) throw InputError("basis sample count must be non-negative");
  if (g.qubits > kMaxSearchQubits) {
    throw SearchSpaceTooLarge("branch enumeration supports at most " +
                              std::to_string(kMaxSearchQubits) + " qubits");
  }
  const std::size_t dim = std::size_t{1} << g.qubits;
  const std::uint64_t radix = 2 * static_cast<std::uint64_t>(bound) + 1;
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < dim; ++k) {
    if (count > kMaxBranchCount / radix) {
      throw SearchSpaceTooLarge("(2*" + std::to_string(bound) + "+1)^" +
                                std::to_string(dim) + " branches exceed 1e8");
    }
    count *= radix;
  }

  const ComplexMatrix target = gate_matrix(g);
  const auto spectrum = spectral_decompose(target, MatrixKind::unitary);
  const auto phases = block_phases(spectrum);
  const auto blocks = spectrum.degenerate_blocks();
  const bool degenerate =
      std::any_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.size() > 1; });
  const std::size_t bases = degenerate ? 1 + static_cast<std::size_t>(basis_samples) : 1;

  const PauliTable table(g.qubits);
  const auto& order = table.by_weight_desc();
  std::vector<ComplexMatrix> basis_list;
  std::vector<std::vector<double>> maps;
  basis_list.reserve(bases);
  maps.reserve(bases);
  for (std::size_t s = 0; s < bases; ++s) {
    basis_list.push_back(rotated_basis(spectrum.eigenvectors, blocks, seed, s));
    maps.push_back(coefficient_map(table, basis_list.back()));
  }

  const std::uint64_t total = count * bases;
  const unsigned threads = worker_count(options.threads, total / 4096);
  std::vector<Candidate> best(threads);
  const double tol = options.weight_tol;

  run_workers(threads, [&](unsigned w) {
    const std::uint64_t begin = total * w / threads;
    const std::uint64_t end = total * (w + 1) / threads;
    if (begin >= end) return;
    std::size_t sample = begin / count;
    std::vector<long long> integers = decode_integers(begin % count, dim, bound);
    std::vector<double> shifted(dim);
    Candidate local;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      for (std::size_t k = 0; k < dim; ++k)
        shifted[k] = phases[k] + kTwoPi * static_cast<double>(integers[k]);
      const double* map = maps[sample].data();
      int weight = 0;
      for (std::size_t row = 0; row < order.size(); ++row) {
        double c = 0.0;
        for (std::size_t k = 0; k < dim; ++k) c += map[row * dim + k] * shifted[k];
        if (std::abs(c) >= tol) {
          weight = table.weight(order[row]);
          break;
        }
      }
      if (!local.found || weight < local.weight ||
          (weight == local.weight && integers < local.integers)) {
        local.found = true;
        local.weight = weight;
        local.integers = integers;
        local.sample = sample;
      }
      if (!next_integers(integers, bound)) ++sample;
    }
    best[w] = std::move(local);
  });

  Candidate winner;
  for (auto& c : best)
    if (c.better_than(winner)) winner = std::move(c);

  BranchReport report;
  report.gate = g;
  report.bound = bound;
  report.basis_samples = basis_samples;
  report.seed = seed;
  report.bases_examined = bases;
  report.branches_per_basis = count;
  report.branches_examined = total;
  report.principal_phases = phases;
  report.degenerate_blocks = blocks;
  report.weight_tol = tol;

  LogBranch& arg = report.argmin;
  arg.integers = winner.integers;
  arg.basis_sample = winner.sample;
  arg.hamiltonian = branch_hamiltonian(basis_list[winner.sample], phases, winner.integers);
  arg.decomposition = pauli_decompose(arg.hamiltonian);
  arg.weight = interaction_order(arg.decomposition, tol);
  report.min_weight = winner.weight;
  report.argmin_residual =
      frobenius_distance(matrix_exp_hermitian(arg.hamiltonian, 1.0), target);
  if (arg.weight != winner.weight || report.argmin_residual > 1e-8) {
    throw NumericalError("argmin branch failed verification (weight " +
                         std::to_string(arg.weight) + ", residual " +
                         std::to_string(report.argmin_residual) + ")");
  }

  // Independent re-check of randomly chosen branches through an explicit
  // Hamiltonian, its exponential and a full Pauli scan.
  detail::SeededRng pick(seed, 0xB4A1C4ECull);
  const std::size_t checks = std::min<std::uint64_t>(options.spot_checks, total);
  for (std::size_t c = 0; c < checks; ++c) {
    const std::uint64_t idx = checks == total ? c : pick.below(total);
    const std::size_t sample = idx / count;
    const auto integers = decode_integers(idx % count, dim, bound);
    const auto h = branch_hamiltonian(basis_list[sample], phases, integers);
    const double residual = frobenius_distance(matrix_exp_hermitian(h, 1.0), target);
    report.max_spot_residual = std::max(report.max_spot_residual, residual);
    if (residual > 1e-8) {
      throw NumericalError("branch spot check failed: residual " +
                           std::to_string(residual));
    }
    if (table.interaction_order(h, tol) < winner.weight) {
      throw NumericalError("branch spot check found a weight below the reported minimum");
    }
  }
  report.spot_checks = checks;
  return report;
}

ComplexMatrix local_hamiltonian(const std::vector<PauliString>& strings,
                                const std::vector<double>& theta) {
  if (strings.size() != theta.size()) {
    throw DimensionMismatch("parameter vector length differs from string count");
  }
  if (strings.empty()) throw InputError("no Pauli strings given");
  const std::size_t dim = std::size_t{1} << strings.front().qubits();
  return build_hamiltonian(string_actions(strings), dim, theta);
}

ComplexMatrix exp_derivative(const std::vector<double>& eigenvalues,
                             const ComplexMatrix& eigenvectors,
                             const ComplexMatrix& direction) {
  const std::size_t n = eigenvectors.dim();
  if (direction.dim() != n || eigenvalues.size() != n) {
    throw DimensionMismatch("exp_derivative operands");
  }
  // (e^{iλ_j} − e^{iλ_k})/(λ_j − λ_k) = i·e^{i(λ_j+λ_k)/2}·sinc((λ_j−λ_k)/2)
  ComplexMatrix inner = eigenvectors.adjoint() * direction * eigenvectors;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const double half = 0.5 * (eigenvalues[j] - eigenvalues[k]);
      const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0
                                                : std::sin(half) / half;
      const Complex factor =
          Complex{0.0, 1.0} * std::polar(sinc, 0.5 * (eigenvalues[j] + eigenvalues[k]));
      inner(j, k) *= factor;
    }
  return eigenvectors * inner * eigenvectors.adjoint();
}

VariationalReport variational_fit(const GateSpec& g, int locality, int restarts,
                                  int max_iters, std::uint64_t seed,
                                  const VariationalOptions& options) {
  if (locality < 0 || locality > g.qubits) {
    throw InputError("locality must lie in 0.." + std::to_string(g.qubits));
  }
  if (restarts < 1) throw InputError("restarts must be at least 1");
  if (max_iters < 0) throw InputError("iteration cap must be non-negative");
  if (g.qubits > kMaxSearchQubits) {
    throw SearchSpaceTooLarge("variational fit supports at most " +
                              std::to_string(kMaxSearchQubits) + " qubits");
  }

  VariationalReport report;
  report.gate = g;
  report.locality = locality;
  report.restarts = restarts;
  report.max_iters = max_iters;
  report.seed = seed;
  report.optimizer = "levenberg-marquardt (analytic Jacobian)";
  report.strings = strings_of_weight_at_most(g.qubits, locality);
  report.parameter_count = report.strings.size();

  const ComplexMatrix target = gate_matrix(g);
  const auto actions = string_actions(report.strings);
  std::vector<RestartResult> results(static_cast<std::size_t>(restarts));
  std::atomic<int> next{0};
  run_workers(worker_count(options.threads, results.size()), [&](unsigned) {
    for (int r = next++; r < restarts; r = next++) {
      detail::SeededRng rng(seed, static_cast<std::uint64_t>(r));
      std::vector<double> theta(report.parameter_count);
      for (auto& x : theta) x = rng.uniform(-std::numbers::pi, std::numbers::pi);
      results[static_cast<std::size_t>(r)] = levenberg_marquardt(
          actions, target, std::move(theta), max_iters, options.target_distance);
    }
  });

  report.best_distance = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    auto& res = results[static_cast<std::size_t>(r)];
    // Reported distances come from the plain exponential, not the optimizer's
    // internal residual.
    const double dist = distance(
        matrix_exp_hermitian(build_hamiltonian(actions, target.dim(), res.theta), 1.0),
        target);
    report.history.push_back(dist);
    report.iterations.push_back(res.iterations);
    if (dist < report.best_distance) {
      report.best_distance = dist;
      report.best_restart = r;
      report.best_theta = res.theta;
    }
  }
  return report;
}

double distance(const ComplexMatrix& u, const ComplexMatrix& v) {
  return frobenius_distance(u, v);
}

}  // namespace hamgen

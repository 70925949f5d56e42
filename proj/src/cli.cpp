#include "hamgen/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "hamgen/coupling.hpp"
#include "hamgen/errors.hpp"
#include "hamgen/locality.hpp"
#include "hamgen/pauli.hpp"
#include "hamgen/spectral.hpp"
#include "hamgen/synthesis.hpp"

namespace hamgen::cli {
namespace {

using nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string gate;
  int bound = 1;
  int samples = 0;
  int restarts = 20;
  int iters = 2000;
  std::uint64_t seed = 1;
  int locality = -1;  // −1: n − 1 (at least 0)
  int qubits = 0;
  std::string alpha;
  std::string epsilon;
  std::string output = "text";
  std::string out_path;
};

ordered_json pauli_json(const PauliDecomposition& d) {
  ordered_json list = ordered_json::array();
  for (const auto& [s, c] : d.coeffs())
    list.push_back(ordered_json{{"string", s.str()}, {"coeff", c}});
  return list;
}

ordered_json matrix_json(const ComplexMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.dim(); ++j)
      row.push_back(ordered_json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string fixed(double value, int digits = 9) {
  std::ostringstream os;
  os << std::showpos << std::fixed << std::setprecision(digits)
     << (std::abs(value) < 0.5 * std::pow(10.0, -digits) ? 0.0 : value);
  return os.str();
}

std::string join(const std::vector<double>& values, int digits = 9) {
  std::ostringstream os;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << std::setprecision(digits) << (values[i] == 0.0 ? 0.0 : values[i]);
  }
  return os.str();
}

// ---------------------------------------------------------------------------

struct Report {
  ordered_json config;
  ordered_json result;
  std::string text;
};

Report analyze(const RunConfig& cfg) {
  const GateSpec g = GateSpec::parse(cfg.gate);
  const ComplexMatrix u = gate_matrix(g);
  const auto spectrum = spectral_decompose(u, MatrixKind::unitary);
  const auto phases = block_phases(spectrum);
  const ComplexMatrix h = principal_log(u);
  const auto principal = pauli_decompose(h);
  const int order = interaction_order(principal);

  Report rep;
  rep.config = {{"gate", g.label()}};
  auto& res = rep.result;
  res["gate"] = g.label();
  res["qubits"] = g.qubits;
  res["eigenphases"] = phases;
  res["principal_hamiltonian"] = matrix_json(h);
  res["principal_pauli"] = pauli_json(principal);
  res["order"] = order;
  res["principal_exp_residual"] = frobenius_distance(matrix_exp_hermitian(h, 1.0), u);

  std::optional<PauliDecomposition> reference;
  std::ostringstream text;
  text << "gate: " << g.label() << " (" << g.qubits << " qubit"
       << (g.qubits == 1 ? "" : "s") << ")\n";
  text << "eigenphases:";
  for (double p : phases) text << ' ' << fixed(p);
  text << "\n";

  if (g.is_controlled_x()) {
    const auto gen = projector_hamiltonian(g);
    reference = pauli_decompose(gen.h);
    const double residual = frobenius_distance(matrix_exp_hermitian(gen.h, gen.t), u);
    res["reference"] = {{"t", gen.t},
                        {"pauli", pauli_json(*reference)},
                        {"order", interaction_order(*reference)},
                        {"exp_residual", residual}};
    text << "reference generator: t = " << std::setprecision(12) << gen.t
         << " (pi/" << (1 << g.qubits) << "), ||exp(i t h) - U||_F = "
         << std::setprecision(3) << residual << (residual < 1e-10 ? " (ok)" : " (MISMATCH)")
         << "\n";
  }

  std::set<PauliString> rows;
  for (const auto& [s, c] : principal.coeffs()) rows.insert(s);
  if (reference)
    for (const auto& [s, c] : reference->coeffs()) rows.insert(s);

  text << "Pauli decomposition of the principal Hamiltonian:\n";
  const int width = std::max(8, g.qubits + 2);
  text << "  " << std::left << std::setw(width) << "string";
  if (reference) text << std::setw(14) << "reference";
  text << "principal\n";
  for (const auto& s : rows) {
    text << "  " << std::left << std::setw(width) << s.str();
    if (reference) text << std::setw(14) << fixed(reference->coeff(s), 6);
    text << fixed(principal.coeff(s)) << "\n";
  }
  if (rows.empty()) text << "  (zero Hamiltonian)\n";
  text << "order: " << order << "\n";
  rep.text = text.str();
  return rep;
}

Report branches(const RunConfig& cfg) {
  const GateSpec g = GateSpec::parse(cfg.gate);
  const auto r = enumerate_branches(g, cfg.bound, cfg.samples, cfg.seed);

  Report rep;
  rep.config = {{"gate", g.label()},
                {"bound", cfg.bound},
                {"samples", cfg.samples},
                {"seed", cfg.seed}};
  auto& res = rep.result;
  res["gate"] = g.label();
  res["bound"] = r.bound;
  res["basis_samples"] = r.basis_samples;
  res["branches_examined"] = r.branches_examined;
  res["min_weight"] = r.min_weight;
  res["argmin_integers"] = r.argmin.integers;
  res["argmin_pauli"] = pauli_json(r.argmin.decomposition);
  res["seed"] = r.seed;
  res["argmin_basis_sample"] = r.argmin.basis_sample;
  res["argmin_exp_residual"] = r.argmin_residual;
  res["bases_examined"] = r.bases_examined;
  res["branches_per_basis"] = r.branches_per_basis;
  res["principal_phases"] = r.principal_phases;
  res["degenerate_blocks"] = r.degenerate_blocks;
  res["spot_checks"] = r.spot_checks;
  res["max_spot_residual"] = r.max_spot_residual;
  res["weight_tol"] = r.weight_tol;
  res["cluster_tol"] = r.cluster_tol;

  std::ostringstream text;
  text << "gate: " << g.label() << "\n"
       << "bound: " << r.bound << "  basis samples: " << r.basis_samples
       << "  seed: " << r.seed << "\n"
       << "bases examined: " << r.bases_examined
       << "  branches per basis: " << r.branches_per_basis
       << "  total: " << r.branches_examined << "\n"
       << "min_weight: " << r.min_weight << "\n"
       << "argmin integers:";
  for (auto n : r.argmin.integers) text << ' ' << n;
  text << "  (basis sample " << r.argmin.basis_sample << ")\n"
       << "argmin ||exp(iH) - U||_F = " << std::setprecision(3) << r.argmin_residual
       << "\nargmin Pauli terms:\n";
  for (const auto& [s, c] : r.argmin.decomposition.coeffs())
    if (std::abs(c) >= r.weight_tol) text << "  " << s.str() << "  " << fixed(c) << "\n";
  rep.text = text.str();
  return rep;
}

Report variational(const RunConfig& cfg) {
  const GateSpec g = GateSpec::parse(cfg.gate);
  const int k = cfg.locality >= 0 ? cfg.locality : std::max(0, g.qubits - 1);
  const auto r = variational_fit(g, k, cfg.restarts, cfg.iters, cfg.seed);

  Report rep;
  rep.config = {{"gate", g.label()},
                {"locality", k},
                {"restarts", cfg.restarts},
                {"iters", cfg.iters},
                {"seed", cfg.seed}};
  auto& res = rep.result;
  res["gate"] = g.label();
  res["locality"] = r.locality;
  res["parameter_count"] = r.parameter_count;
  res["restarts"] = r.restarts;
  res["best_distance"] = r.best_distance;
  res["history"] = r.history;
  res["seed"] = r.seed;
  res["max_iters"] = r.max_iters;
  res["optimizer"] = r.optimizer;
  res["best_restart"] = r.best_restart;
  res["iterations"] = r.iterations;
  ordered_json theta = ordered_json::array();
  for (std::size_t i = 0; i < r.strings.size(); ++i)
    theta.push_back(ordered_json{{"string", r.strings[i].str()}, {"coeff", r.best_theta[i]}});
  res["best_theta"] = std::move(theta);

  std::ostringstream text;
  text << "gate: " << g.label() << "  locality: " << k
       << "  parameters: " << r.parameter_count << "\n"
       << "restarts: " << r.restarts << "  iteration cap: " << r.max_iters
       << "  seed: " << r.seed << "\n"
       << "optimizer: " << r.optimizer << "\n"
       << "best_distance: " << std::setprecision(6) << r.best_distance
       << " (restart " << r.best_restart << ")\n"
       << "history:";
  for (double d : r.history) text << ' ' << std::setprecision(3) << d;
  text << "\n";
  rep.text = text.str();
  return rep;
}

Report couplings(const RunConfig& cfg) {
  if (cfg.alpha.empty() == cfg.epsilon.empty()) {
    throw InputError("--alpha/--epsilon: give exactly one of the two");
  }
  const std::size_t dim = std::size_t{1} << cfg.qubits;
  CouplingVector alpha{cfg.qubits, {}};
  SpectrumVector epsilon{cfg.qubits, {}};
  if (!cfg.alpha.empty()) {
    alpha.alpha = parse_list(cfg.alpha, "--alpha");
    if (alpha.alpha.size() != dim) {
      throw InputError("--alpha: expected " + std::to_string(dim) + " values for n=" +
                       std::to_string(cfg.qubits) + ", got " +
                       std::to_string(alpha.alpha.size()));
    }
    epsilon = couplings_to_spectrum(alpha);
  } else {
    epsilon.epsilon = parse_list(cfg.epsilon, "--epsilon");
    if (epsilon.epsilon.size() != dim) {
      throw InputError("--epsilon: expected " + std::to_string(dim) + " values for n=" +
                       std::to_string(cfg.qubits) + ", got " +
                       std::to_string(epsilon.epsilon.size()));
    }
    alpha = spectrum_to_couplings(epsilon);
  }
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < dim; ++k) labels.push_back(z_string_label(cfg.qubits, k));

  Report rep;
  rep.config = {{"n", cfg.qubits}};
  if (!cfg.alpha.empty()) rep.config["alpha"] = alpha.alpha;
  else rep.config["epsilon"] = epsilon.epsilon;
  rep.result = {{"n", cfg.qubits},
                {"alpha", alpha.alpha},
                {"epsilon", epsilon.epsilon},
                {"labels", labels}};

  std::ostringstream text;
  text << "n: " << cfg.qubits << "\n"
       << "alpha: " << join(alpha.alpha) << "\n"
       << "epsilon: " << join(epsilon.epsilon) << "\n"
       << "labels:";
  for (const auto& l : labels) text << ' ' << l;
  text << "\n";
  rep.text = text.str();
  return rep;
}

void emit(const RunConfig& cfg, const Report& rep, std::ostream& out) {
  std::ostringstream body;
  if (cfg.output == "json") {
    ordered_json doc;
    doc["command"] = cfg.command;
    doc["config"] = rep.config;
    doc["config"]["output"] = cfg.output;
    doc["result"] = rep.result;
    body << doc.dump(2) << "\n";
  } else {
    body << rep.text;
  }
  if (cfg.out_path.empty()) {
    out << body.str();
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) throw InputError("--out: cannot write '" + cfg.out_path + "'");
  file << body.str();
}

}  // namespace

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const std::string item =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size() || !std::isfinite(value)) {
      throw ParseError(flag + ": bad number '" + item + "'");
    }
    values.push_back(value);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Generating Hamiltonians of small quantum gates: logarithm branches, "
               "Pauli weights and k-local fits"};
  app.name("hamgen");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--output", cfg.output, "Report format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", cfg.out_path, "Write the report to this file");

  auto* an = app.add_subcommand("analyze", "Principal Hamiltonian, Pauli table and order");
  an->add_option("gate", cfg.gate, "identity | identity:<n> | cnot | toffoli | ccx:<n> | file:<path>")
      ->required();

  auto* br = app.add_subcommand("branches", "Enumerate logarithm branches for the lowest weight");
  br->add_option("gate", cfg.gate, "Gate source")->required();
  br->add_option("--bound", cfg.bound, "Integer shift bound B")->check(CLI::NonNegativeNumber);
  br->add_option("--samples", cfg.samples, "Haar resamplings of degenerate blocks")
      ->check(CLI::NonNegativeNumber);
  br->add_option("--seed", cfg.seed, "Random seed");

  auto* va = app.add_subcommand("variational", "Fit a k-local generator");
  va->add_option("gate", cfg.gate, "Gate source")->required();
  va->add_option("--locality", cfg.locality, "Maximum Pauli weight k (default n-1)")
      ->check(CLI::NonNegativeNumber);
  va->add_option("--restarts", cfg.restarts, "Random restarts")->check(CLI::PositiveNumber);
  va->add_option("--iters", cfg.iters, "Iteration cap per restart")
      ->check(CLI::NonNegativeNumber);
  va->add_option("--seed", cfg.seed, "Random seed");

  auto* co = app.add_subcommand("couplings", "Convert between sigma_z couplings and energy levels");
  co->add_option("--n", cfg.qubits, "Qubit count")->required()->check(CLI::Range(1, 6));
  auto* alpha = co->add_option("--alpha", cfg.alpha, "Comma-separated couplings");
  auto* eps = co->add_option("--epsilon", cfg.epsilon, "Comma-separated energy levels");
  alpha->excludes(eps);

  std::vector<std::string> argv_storage{"hamgen"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    Report rep;
    if (an->parsed()) {
      cfg.command = "analyze";
      rep = analyze(cfg);
    } else if (br->parsed()) {
      cfg.command = "branches";
      rep = branches(cfg);
    } else if (va->parsed()) {
      cfg.command = "variational";
      rep = variational(cfg);
    } else {
      cfg.command = "couplings";
      rep = couplings(cfg);
    }
    emit(cfg, rep, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
  return kOk;
}

}  // namespace hamgen::cli

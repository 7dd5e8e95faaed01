// blochvec: positivity checks, invariant reports, Werner sweeps, three-tangle
// and affine-map scans on JSON state files.
//
// Exit status: 0 PSD or Boundary, 2 NotPSD, 1 any error.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include <blochvec/blochvec.hpp>
#include <blochvec/io.hpp>

namespace {

using namespace blochvec;
using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_not_psd = 2;

double default_tolerance() {
  if (const char* env = std::getenv("BLOCHVEC_TOL")) {
    try {
      std::size_t used = 0;
      const double value = std::stod(env, &used);
      if (used == std::string(env).size() && value > 0) return value;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::InvalidInput, std::string("BLOCHVEC_TOL is not a positive number: '") + env + "'");
  }
  return tol::positivity;
}

/// Product basis when the document records a qubit/qutrit layout, Gell-Mann otherwise.
BasisSet basis_for(const io::MatrixDocument& doc) {
  if (doc.dims.size() > 1) return build_product_basis(doc.dims);
  return build_gellmann_basis(doc.dim);
}

json vector_json(const std::vector<double>& v) { return json(v); }

int verdict_exit(Verdict v) { return v == Verdict::NotPSD ? exit_not_psd : exit_ok; }

void print_sequence(const SymFnSequence& seq) {
  for (int k = 1; k <= seq.dim; ++k) std::cout << "S_" << k << " = " << std::setprecision(12) << seq.s(k) << "\n";
  std::cout << "sign changes = " << seq.sign_changes << "\n";
  std::cout << "verdict = " << to_string(seq.verdict) << "\n";
}

json sequence_json(const SymFnSequence& seq) {
  return {{"S", vector_json(seq.S)}, {"sign_changes", seq.sign_changes}, {"verdict", to_string(seq.verdict)}, {"eps_pos", seq.tolerance}};
}

struct CheckOptions {
  std::string input;
  std::optional<double> tol;
  bool json = false;
  bool verify = false;
  bool invert = false;
  double weight = 1.0;
};

/// Shared by `check` and `map`: gate the operator, optionally report the
/// eigenvalue cross-check.
int report_positivity(const HermitianOperator& op, const BasisSet& basis, const StructureTensors& tensors, double tolerance,
                      const CheckOptions& opt, json extra) {
  const SymFnSequence seq = check_positivity(op, basis, tensors, tolerance);
  std::optional<RealVector> eig;
  if (opt.verify) eig = op.eigenvalues();

  if (opt.json) {
    json out = sequence_json(seq);
    out["dim"] = op.dim();
    if (eig) {
      int positive = 0;
      for (double e : *eig) positive += e > seq.tolerance;
      out["min_eigenvalue"] = eig->minCoeff();
      out["positive_eigenvalues"] = positive;
    }
    out.update(extra);
    std::cout << out.dump(2) << "\n";
  } else {
    for (auto& [key, value] : extra.items()) std::cout << key << " = " << value << "\n";
    print_sequence(seq);
    if (eig) {
      int positive = 0;
      for (double e : *eig) positive += e > seq.tolerance;
      std::cout << "min eigenvalue = " << eig->minCoeff() << "\n";
      std::cout << "positive eigenvalues = " << positive << "\n";
    }
  }
  return verdict_exit(seq.verdict);
}

int cmd_check(const CheckOptions& opt) {
  const double tolerance = opt.tol.value_or(default_tolerance());
  const auto doc = io::load(opt.input);
  if (doc.kind != io::DocumentKind::Matrix && doc.kind != io::DocumentKind::Coherence)
    throw Error(ErrorKind::InvalidInput, "check expects a matrix or coherence document");
  const BasisSet basis = basis_for(doc);
  const StructureTensors tensors = structure_constants(basis);

  json extra = json::object();
  if (opt.invert) {
    const CoherenceState state = io::state_of(doc, basis);
    const WeightedState inverted = universal_inversion(state, opt.weight);
    extra["input_norm"] = state.n.norm();
    extra["inversion_weight"] = opt.weight;
    // the positive weight does not change the verdict, only the trace
    return report_positivity(from_coherence(inverted.state, basis), basis, tensors, tolerance, opt, extra);
  }
  const HermitianOperator op =
      doc.kind == io::DocumentKind::Matrix ? HermitianOperator(doc.matrix) : from_coherence({doc.dim, doc.n}, basis);
  return report_positivity(op, basis, tensors, tolerance, opt, extra);
}

int cmd_map(const std::string& map_file, const std::string& state_file, const CheckOptions& opt) {
  const double tolerance = opt.tol.value_or(default_tolerance());
  const AffineMap map = io::map_of(io::load(map_file));
  const auto doc = io::load(state_file);
  const BasisSet basis = basis_for(doc);
  const StructureTensors tensors = structure_constants(basis);
  const CoherenceState image = apply_affine_map(map, io::state_of(doc, basis));
  json extra{{"image_norm", image.n.norm()}};
  return report_positivity(from_coherence(image, basis), basis, tensors, tolerance, opt, extra);
}

int cmd_invariants(const std::string& input, int max_order, bool as_json) {
  const auto doc = io::load(input);
  const BasisSet basis = basis_for(doc);
  const StructureTensors tensors = structure_constants(basis);
  const CoherenceState state = io::state_of(doc, basis);
  const int N = state.dim;
  if (max_order < 2 || max_order > 9) throw Error(ErrorKind::UnsupportedOrder, "closed-form traces exist for orders 2..9");

  json traces = json::array();
  double discrepancy = 0.0;
  for (int m = 2; m <= max_order; ++m) {
    const double closed = trace_power_closed(state, m, tensors);
    const double adjoint = trace_power_adjoint(state, m, tensors);
    discrepancy = std::max(discrepancy, std::abs(closed - adjoint));
    traces.push_back({{"m", m}, {"closed", closed}, {"adjoint", adjoint}});
  }
  const CasimirSet cs = casimirs(state, tensors, std::min(N, 9));
  json casimir_json = json::object();
  for (const auto& [m, value] : cs.values) casimir_json["c" + std::to_string(m)] = value;

  std::string degeneracy;
  if (N == 3) degeneracy = to_string(classify_degeneracy_3(cs.at(2), cs.at(3)));
  if (N == 4) degeneracy = to_string(classify_degeneracy_4(cs));

  if (as_json) {
    json out{{"dim", N}, {"traces", traces}, {"max_discrepancy", discrepancy}, {"casimirs", casimir_json}};
    if (!degeneracy.empty()) out["degeneracy"] = degeneracy;
    std::cout << out.dump(2) << "\n";
    return exit_ok;
  }
  std::cout << std::setprecision(12);
  std::cout << "N = " << N << "\n";
  for (const auto& t : traces)
    std::cout << "Tr(rho^" << t["m"] << ")  closed = " << t["closed"].get<double>() << "  adjoint = " << t["adjoint"].get<double>()
              << "\n";
  std::cout << "max discrepancy = " << discrepancy << "\n";
  for (const auto& [m, value] : cs.values) std::cout << "c_" << m << " = " << value << "\n";
  if (!degeneracy.empty()) std::cout << "degeneracy = " << degeneracy << "\n";
  return exit_ok;
}

int cmd_werner(std::optional<double> x, std::optional<int> sweep, double tolerance, bool as_json) {
  std::vector<double> xs;
  if (x) xs.push_back(*x);
  if (sweep) {
    if (*sweep < 1) throw Error(ErrorKind::Domain, "--sweep needs at least one step");
    for (int i = 0; i <= *sweep; ++i) xs.push_back(static_cast<double>(i) / *sweep);
  }

  json rows = json::array();
  for (double v : xs) {
    const auto plain = werner_symfns_pipeline(v, false, tolerance);
    const auto pt = werner_symfns_pipeline(v, true, tolerance);
    rows.push_back({{"x", v},
                    {"S3", plain.s(3)},
                    {"S4", plain.s(4)},
                    {"S3_PT", pt.s(3)},
                    {"S4_PT", pt.s(4)},
                    {"ppt", pt.positive_semidefinite()},
                    {"verdict_PT", to_string(pt.verdict)}});
  }
  std::optional<double> boundary;
  if (sweep) boundary = werner_ppt_boundary();

  if (as_json) {
    json out{{"rows", rows}};
    if (boundary) out["ppt_boundary"] = *boundary;
    std::cout << out.dump(2) << "\n";
    return exit_ok;
  }
  std::cout << std::setw(8) << "x" << std::setw(16) << "S3" << std::setw(16) << "S4" << std::setw(16) << "S3_PT" << std::setw(16)
            << "S4_PT" << "  PPT\n";
  std::cout << std::setprecision(8);
  for (const auto& r : rows)
    std::cout << std::setw(8) << r["x"].get<double>() << std::setw(16) << r["S3"].get<double>() << std::setw(16)
              << r["S4"].get<double>() << std::setw(16) << r["S3_PT"].get<double>() << std::setw(16) << r["S4_PT"].get<double>()
              << "  " << r["verdict_PT"].get<std::string>() << "\n";
  if (boundary) std::cout << "PPT boundary x = " << std::setprecision(10) << *boundary << "\n";
  return exit_ok;
}

int cmd_tangle(const std::string& input, bool as_json) {
  const auto doc = io::load(input);
  if (doc.kind != io::DocumentKind::Ket) throw Error(ErrorKind::InvalidInput, "tangle expects a ket document");
  const PureTripartiteState psi(doc.amplitudes);
  const double tau = three_tangle(psi);
  const double c_ab = concurrence_squared_bound(psi.marginal({0, 1})).c_squared;
  const double c_ac = concurrence_squared_bound(psi.marginal({0, 2})).c_squared;
  const CkwResult ckw = ckw_inequality_check(psi);
  const double spread = tangle_permutation_spread(psi);

  json out{{"tau", tau},          {"C2_AB", c_ab},   {"C2_AC", c_ac},       {"ckw_lhs", ckw.lhs},
           {"ckw_rhs", ckw.rhs}, {"ckw_holds", ckw.holds}, {"permutation_spread", spread}};
  if (as_json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << std::setprecision(10);
    for (auto& [key, value] : out.items()) {
      std::cout << key << " = ";
      if (value.is_number_float())
        std::cout << value.get<double>();
      else
        std::cout << value;
      std::cout << "\n";
    }
  }
  return exit_ok;
}

int cmd_basis(std::optional<int> dim, const std::vector<int>& dims) {
  BasisSet basis;
  if (!dims.empty())
    basis = build_product_basis(dims);
  else if (dim)
    basis = build_gellmann_basis(*dim);
  else
    throw Error(ErrorKind::InvalidInput, "basis needs --dim or --dims");
  std::cout << io::basis_to_json(basis).dump() << "\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence-vector positivity and invariant toolkit"};
  app.require_subcommand(1);

  CheckOptions check_opt;
  auto* check = app.add_subcommand("check", "S_k positivity gate on a matrix or coherence document");
  check->add_option("input", check_opt.input, "JSON document")->required()->check(CLI::ExistingFile);
  check->add_option("--tol", check_opt.tol, "relative positivity tolerance (default 1e-9 or $BLOCHVEC_TOL)");
  check->add_flag("--json", check_opt.json, "machine-readable output");
  check->add_flag("--verify", check_opt.verify, "cross-check against eigenvalues");
  check->add_flag("--invert", check_opt.invert, "apply the inversion n -> -n/b before checking");
  check->add_option("--weight", check_opt.weight, "inversion weight b (1 is the plain flip, N-1 the universal inverter)");

  std::string inv_input;
  std::optional<int> max_order;
  bool inv_json = false;
  auto* invariants = app.add_subcommand("invariants", "trace powers, Casimirs and degeneracy pattern");
  invariants->add_option("input", inv_input, "JSON document")->required()->check(CLI::ExistingFile);
  invariants->add_option("--max-order", max_order, "highest trace power, 2..9 (default min(N, 9))");
  invariants->add_flag("--json", inv_json, "machine-readable output");

  std::optional<double> werner_x;
  std::optional<int> werner_sweep;
  std::optional<double> werner_tol;
  bool werner_json = false;
  auto* werner = app.add_subcommand("werner", "Werner-state symmetric functions and PPT verdict");
  auto* x_opt = werner->add_option("--x", werner_x, "mixing parameter in [0, 1]");
  auto* sweep_opt = werner->add_option("--sweep", werner_sweep, "evaluate x = i/steps for i = 0..steps");
  x_opt->excludes(sweep_opt);
  werner->add_option("--tol", werner_tol, "relative positivity tolerance");
  werner->add_flag("--json", werner_json, "machine-readable output");

  std::string tangle_input;
  bool tangle_json = false;
  auto* tangle = app.add_subcommand("tangle", "three-tangle and CKW check of a three-qubit ket");
  tangle->add_option("input", tangle_input, "JSON ket document")->required()->check(CLI::ExistingFile);
  tangle->add_flag("--json", tangle_json, "machine-readable output");

  std::string map_file, map_state;
  CheckOptions map_opt;
  auto* map = app.add_subcommand("map", "apply n -> T n + t and gate the image");
  map->add_option("map", map_file, "JSON affine_map document")->required()->check(CLI::ExistingFile);
  map->add_option("input", map_state, "JSON matrix or coherence document")->required()->check(CLI::ExistingFile);
  map->add_option("--tol", map_opt.tol, "relative positivity tolerance");
  map->add_flag("--json", map_opt.json, "machine-readable output");
  map->add_flag("--verify", map_opt.verify, "cross-check against eigenvalues");

  std::optional<int> basis_dim;
  std::vector<int> basis_dims;
  auto* basis = app.add_subcommand("basis", "export the basis as JSON");
  basis->add_option("--dim", basis_dim, "generalized Gell-Mann basis of su(N)");
  basis->add_option("--dims", basis_dims, "product basis over qubit/qutrit factors")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_error;
  }

  try {
    if (*check) return cmd_check(check_opt);
    if (*invariants) {
      const auto doc = io::load(inv_input);
      return cmd_invariants(inv_input, max_order.value_or(std::min(doc.dim, 9)), inv_json);
    }
    if (*werner) {
      if (!werner_x && !werner_sweep) throw Error(ErrorKind::InvalidInput, "werner needs --x or --sweep");
      return cmd_werner(werner_x, werner_sweep, werner_tol.value_or(default_tolerance()), werner_json);
    }
    if (*tangle) return cmd_tangle(tangle_input, tangle_json);
    if (*map) return cmd_map(map_file, map_state, map_opt);
    if (*basis) return cmd_basis(basis_dim, basis_dims);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_error;
  }
  return exit_error;
}

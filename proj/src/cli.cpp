// Copyright 2026 The rsplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rsplab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "rsplab/conversion.hpp"
#include "rsplab/latitude.hpp"
#include "rsplab/rsp_model.hpp"
#include "rsplab/serialize.hpp"

namespace rsplab::cli {

namespace {

/// Raised for usage and I/O problems; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 1;
  std::size_t d = 2;
  std::optional<std::size_t> d_prime;
  std::size_t anc = 1;
  double p_f = 0.0;
  std::string ensemble_spec;
  std::string povm_path;
  std::string output_path;
  bool no_timestamp = false;

  double structural_tolerance() const { return tolerance / kStructuralRatio; }
};

double env_tolerance() {
  if (const char* s = std::getenv("RSPLAB_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end == s || *end != '\0' || !(v > 0.0))
      throw UsageError(std::string("RSPLAB_TOL is not a positive number: ") + s);
    return v;
  }
  return kDefaultTolerance;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void stamp(Json& j, const RunConfig& cfg) {
  if (!cfg.no_timestamp) j["generated_at"] = utc_timestamp();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("cannot parse '" + path + "': " + e.what());
  }
}

void emit(const Json& j, const RunConfig& cfg, std::ostream& out) {
  const std::string text = dump(j);
  if (cfg.output_path.empty() || cfg.output_path == "-") {
    out << text;
    return;
  }
  std::ofstream f(cfg.output_path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + cfg.output_path + "'");
  f << text;
  if (!f) throw UsageError("write to '" + cfg.output_path + "' failed");
}

void check_dims(const RunConfig& cfg) {
  if (cfg.d < 2) throw UsageError("--d must be >= 2");
  if (cfg.anc < 1) throw UsageError("--anc must be >= 1");
  if (cfg.d_prime && *cfg.d_prime != cfg.d)
    throw UsageError("generated protocols use d' = d; --d-prime must equal --d");
}

AnyProtocol load_protocol(const std::string& source, const RunConfig& cfg) {
  if (source == "teleport" || source == "teleportation") {
    check_dims(cfg);
    return make_teleportation(cfg.d);
  }
  if (source == "random") {
    check_dims(cfg);
    return random_valid_protocol(cfg.d, cfg.anc, cfg.seed);
  }
  if (source == "failing") {
    check_dims(cfg);
    if (!(cfg.p_f >= 0.0 && cfg.p_f < 1.0)) throw UsageError("--p-f must be in [0, 1)");
    return make_failing_teleportation(
        cfg.d, cfg.p_f, ComplexMatrix::identity(cfg.d) * Complex(1.0 / static_cast<double>(cfg.d)));
  }
  try {
    return protocol_from_json(read_json_file(source));
  } catch (const FormatError& e) {
    throw UsageError("'" + source + "': " + e.what());
  }
}

const FaithfulRspProtocol& branches_of(const AnyProtocol& p) {
  if (const auto* f = std::get_if<FaithfulRspProtocol>(&p)) return *f;
  return std::get<NonFaithfulRspProtocol>(p).base();
}

ValidationReport validate_any(const AnyProtocol& p, double tol) {
  if (const auto* f = std::get_if<FaithfulRspProtocol>(&p)) return validate_faithful(*f, tol);
  return validate_nonfaithful(std::get<NonFaithfulRspProtocol>(p), tol);
}

ObliviousPovm convert_any(const AnyProtocol& p, double tol) {
  if (const auto* f = std::get_if<FaithfulRspProtocol>(&p)) return build_oblivious_povm(*f, tol);
  return build_nonfaithful_povm(std::get<NonFaithfulRspProtocol>(p), tol);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("bad number for " + what + ": '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v))
    throw UsageError("bad number for " + what + ": '" + s + "'");
  return v;
}

std::size_t parse_count(const std::string& s, const std::string& what) {
  const double v = parse_double(s, what);
  if (v < 1.0 || v != std::floor(v)) throw UsageError(what + " must be a positive integer");
  return static_cast<std::size_t>(v);
}

struct EnsembleChoice {
  Ensemble ensemble;
  std::string description;
};

/// tetrahedron | random[:N] | latitude[:THETA[:COUNT]]
EnsembleChoice make_ensemble(const std::string& spec_in, std::size_t d, std::uint64_t seed) {
  const std::string spec = spec_in.empty() ? (d == 2 ? "tetrahedron" : "random") : spec_in;
  const auto parts = split(spec, ':');
  const std::string& kind = parts.at(0);
  if (kind == "tetrahedron") {
    if (d != 2) throw UsageError("the tetrahedral ensemble is a qubit ensemble; needs d = 2");
    return {tetrahedral_ensemble(), "tetrahedron"};
  }
  if (kind == "random") {
    const std::size_t n = parts.size() > 1 ? parse_count(parts[1], "random ensemble size") : d * d + 1;
    return {random_ensemble(d, n, derive_seed(seed, 0xe5)), "random:" + std::to_string(n)};
  }
  if (kind == "latitude") {
    if (d != 2) throw UsageError("latitude ensembles are qubit ensembles; needs d = 2");
    const double theta = parts.size() > 1 ? parse_double(parts[1], "latitude theta")
                                          : std::numbers::pi / 4.0;
    const std::size_t count = parts.size() > 2 ? parse_count(parts[2], "latitude count") : 8;
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0))
      throw UsageError("latitude theta must lie in [0, pi/2]");
    std::ostringstream desc;
    desc << "latitude:" << theta << ":" << count;
    return {latitude_ensemble(theta, count), desc.str()};
  }
  throw UsageError("unknown ensemble '" + spec + "' (tetrahedron | random[:N] | latitude[:THETA[:COUNT]])");
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_gen(const std::string& kind, const RunConfig& cfg, std::ostream& out) {
  if (kind != "teleport" && kind != "teleportation" && kind != "random" && kind != "failing")
    throw UsageError("gen: unknown protocol kind '" + kind + "' (teleport | random | failing)");
  const AnyProtocol p = load_protocol(kind, cfg);
  std::visit([&](const auto& proto) { emit(to_json(proto), cfg, out); }, p);
  return kPass;
}

int cmd_convert(const std::string& source, const RunConfig& cfg, std::ostream& out,
                std::ostream& err) {
  const AnyProtocol p = load_protocol(source, cfg);
  const double tol = cfg.structural_tolerance();
  const ValidationReport report = validate_any(p, tol);
  if (!report.passed) {
    err << "validation failed:\n";
    for (const std::string& f : report.failures) err << "  " << f << "\n";
    return kValidationFailure;
  }
  const ObliviousPovm op = convert_any(p, tol);
  std::ostream& log = (cfg.output_path.empty() || cfg.output_path == "-") ? err : out;
  log << "elements: " << op.povm.size() << "\n"
      << "completeness residual: " << op.povm.completeness_residual() << "\n"
      << "min eigenvalue: " << op.povm.min_eigenvalue() << "\n";
  emit(to_json(op), cfg, out);
  return kPass;
}

/// Failure-arm checks for nonfaithful protocols: measured probability p_f and
/// conditional state rho_f for every input.
Json check_failure_arm(const NonFaithfulRspProtocol& np, const ObliviousPovm& op,
                       const Ensemble& ensemble, double tol, bool& passed) {
  double max_prob_dev = 0.0;
  double max_state_dist = 0.0;
  if (op.failure_index) {
    for (const PureState& phi : ensemble.states()) {
      const MeasurementOutcome o = simulate_modified(op, phi).at(*op.failure_index);
      max_prob_dev = std::max(max_prob_dev, std::abs(o.probability - np.p_f()));
      if (!o.null_state) max_state_dist = std::max(max_state_dist, dist(o.conditional_state, np.rho_f()));
    }
  }
  const bool ok = max_prob_dev <= tol && max_state_dist <= tol;
  passed = passed && ok;
  return Json{{"p_f", np.p_f()},
              {"failure_scale", op.failure_scale},
              {"max_prob_deviation", max_prob_dev},
              {"max_state_distance", max_state_dist},
              {"passed", ok}};
}

int cmd_verify(const std::string& source, const RunConfig& cfg, std::ostream& out,
               std::ostream& err) {
  Json report{{"command", "verify"}, {"source", source}, {"tolerance", cfg.tolerance}};

  if (source == "latitude") {
    // The latitude protocol's measurement depends on phi; the conversion
    // precondition is what rejects it.
    const std::string spec = cfg.ensemble_spec.empty() ? "latitude" : cfg.ensemble_spec;
    const EnsembleChoice choice = make_ensemble(spec, 2, cfg.seed);
    const GenericityResult g = is_generic(choice.ensemble);
    report["ensemble"] = choice.description;
    report["ensemble_generic"] = g.generic;
    report["ensemble_rank"] = g.rank;
    std::string diagnostic;
    if (!g.generic)
      diagnostic = "nongeneric ensemble: projector span rank " + std::to_string(g.rank) +
                   " < d^2 = 4; the conversion needs a generic ensemble";
    report["diagnostics"] = g.generic ? Json::array() : Json::array({diagnostic});
    report["passed"] = false;
    stamp(report, cfg);
    emit(report, cfg, out);
    err << (g.generic ? "latitude source needs a latitude ensemble\n" : diagnostic + "\n");
    return kValidationFailure;
  }

  const AnyProtocol any = load_protocol(source, cfg);
  const FaithfulRspProtocol& p = branches_of(any);
  const auto* nonfaithful = std::get_if<NonFaithfulRspProtocol>(&any);
  const EnsembleChoice choice = make_ensemble(cfg.ensemble_spec, p.d(), cfg.seed);
  report["ensemble"] = choice.description;
  report["protocol_fingerprint"] = protocol_fingerprint(p);

  const double tol = cfg.tolerance;
  const ValidationReport validation = validate_any(any, cfg.structural_tolerance());
  report["validation"] = to_json(validation);
  if (!validation.passed) {
    report["passed"] = false;
    stamp(report, cfg);
    emit(report, cfg, out);
    err << "validation failed:\n";
    for (const std::string& f : validation.failures) err << "  " << f << "\n";
    return kValidationFailure;
  }

  const GenericityResult g = is_generic(choice.ensemble);
  if (!g.generic) {
    const std::string diagnostic = "nongeneric ensemble: projector span rank " +
                                   std::to_string(g.rank) + " < d^2 = " +
                                   std::to_string(p.d() * p.d());
    report["ensemble_generic"] = false;
    report["ensemble_rank"] = g.rank;
    report["diagnostics"] = Json::array({diagnostic});
    report["passed"] = false;
    stamp(report, cfg);
    emit(report, cfg, out);
    err << diagnostic << "\n";
    return kValidationFailure;
  }

  ObliviousPovm op = convert_any(any, cfg.structural_tolerance());
  if (!cfg.povm_path.empty()) {
    try {
      op = oblivious_povm_from_json(read_json_file(cfg.povm_path));
    } catch (const FormatError& e) {
      throw UsageError("'" + cfg.povm_path + "': " + e.what());
    }
    report["povm_source"] = cfg.povm_path;
  }

  bool passed = true;
  const EquivalenceReport eq = verify_equivalence(p, op, choice.ensemble, tol);
  passed = passed && eq.passed;
  report["equivalence"] = to_json(eq);

  if (nonfaithful) {
    report["failure_arm"] = check_failure_arm(*nonfaithful, op, choice.ensemble, tol, passed);
  } else {
    const CostComparison cost = cost_invariance_report(p, choice.ensemble);
    const bool cost_ok = cost.max_difference() <= tol;
    passed = passed && cost_ok;
    report["cost"] = Json{{"original", to_json(cost.original)},
                          {"modified", to_json(cost.modified)},
                          {"max_difference", cost.max_difference()},
                          {"passed", cost_ok}};

    const EntanglementReport ent = entanglement_transmission_check(p, op);
    const bool ent_ok = std::abs(ent.min_fidelity - 1.0) <= tol;
    passed = passed && ent_ok;
    Json ej = to_json(ent);
    ej["passed"] = ent_ok;
    report["entanglement"] = std::move(ej);
    if (!ent_ok)
      err << "entanglement transmission: minimum per-message fidelity " << ent.min_fidelity << "\n";
  }
  for (const std::string& d : eq.diagnostics) err << d << "\n";

  report["passed"] = passed;
  stamp(report, cfg);
  emit(report, cfg, out);
  err << (passed ? "verify: PASS" : "verify: FAIL") << " (max prob deviation "
      << eq.max_probability_deviation << ", max state distance " << eq.max_state_distance << ")\n";
  return passed ? kPass : kValidationFailure;
}

std::vector<double> parse_grid(const std::string& grid, const std::string& what) {
  std::vector<double> values;
  for (const std::string& s : split(grid, ',')) {
    if (s.empty()) throw UsageError("empty entry in " + what);
    values.push_back(parse_double(s, what));
  }
  if (values.empty()) throw UsageError(what + " is empty");
  return values;
}

int cmd_latitude(const std::string& theta_grid, const std::string& p_grid, std::size_t n,
                 const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (n < 1) throw UsageError("--n must be >= 1");
  std::vector<double> thetas;
  if (!theta_grid.empty()) {
    thetas = parse_grid(theta_grid, "--grid");
    for (double t : thetas)
      if (!(t >= 0.0 && t <= std::numbers::pi / 2.0))
        throw UsageError("--grid values must lie in [0, pi/2]");
  }
  if (!p_grid.empty()) {
    for (double p : parse_grid(p_grid, "--p-grid")) {
      if (!(p >= 0.0 && p <= 0.5)) throw UsageError("--p-grid values must lie in [0, 1/2]");
      thetas.push_back(latitude_theta_for_p(p));
    }
  }
  if (thetas.empty()) {
    for (int i = 0; i <= 15; ++i) thetas.push_back(0.1 * i);
    thetas.push_back(std::numbers::pi / 2.0);
  }

  Json rows = Json::array();
  for (double t : thetas) {
    const LatitudeCost c = latitude_cost(t, n);
    rows.push_back({{"theta", c.theta},
                    {"p", c.p},
                    {"H", c.entropy},
                    {"cost_per_qubit", c.per_qubit()},
                    {"cost_total", c.total_bits},
                    {"beats_teleportation", c.beats_teleportation()}});
  }
  const double crossover = teleportation_crossover();
  Json report{{"command", "latitude"},
              {"n", n},
              {"crossover_p", crossover},
              {"crossover_theta", latitude_theta_for_p(crossover)},
              {"rows", std::move(rows)}};
  stamp(report, cfg);

  std::ostream& log = (cfg.output_path.empty() || cfg.output_path == "-") ? err : out;
  log << std::setw(10) << "theta" << std::setw(10) << "p" << std::setw(12) << "cbits/qubit"
      << "  vs teleportation\n";
  for (const Json& r : report["rows"]) {
    log << std::fixed << std::setprecision(5) << std::setw(10) << r["theta"].get<double>()
        << std::setw(10) << r["p"].get<double>() << std::setw(12)
        << r["cost_per_qubit"].get<double>() << "  "
        << (r["beats_teleportation"].get<bool>() ? "cheaper" : "not cheaper") << "\n";
  }
  log << std::defaultfloat << "cost < 2 cbits/qubit for p < " << crossover << " (theta < "
      << latitude_theta_for_p(crossover) << ")\n";
  emit(report, cfg, out);
  return kPass;
}

int cmd_cost(const std::string& source, const RunConfig& cfg, std::ostream& out) {
  const AnyProtocol p = load_protocol(source, cfg);
  Json report{{"command", "cost"}, {"source", source}};
  std::visit([&](const auto& proto) { report["cost"] = to_json(classical_cost(proto)); }, p);
  stamp(report, cfg);
  emit(report, cfg, out);
  return kPass;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"rsplab: remote state preparation conversion and verification toolkit", "rsplab"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::optional<double> tol_flag;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", tol_flag, "Tolerance (default 1e-9 or $RSPLAB_TOL)");
    sub->add_option("--out", cfg.output_path, "Output file (default: standard output)");
    sub->add_flag("--no-timestamp", cfg.no_timestamp, "Omit the generated_at field");
  };
  auto add_dims = [&](CLI::App* sub) {
    sub->add_option("--d", cfg.d, "Input dimension d");
    sub->add_option("--d-prime", cfg.d_prime, "Shared-pair local dimension d' (must equal d)");
    sub->add_option("--anc", cfg.anc, "Ancilla dimension for random protocols");
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--p-f", cfg.p_f, "Failure probability for 'failing' protocols");
  };

  std::string gen_kind;
  auto* gen = app.add_subcommand("gen", "Generate a protocol (teleport | random | failing)");
  gen->add_option("kind", gen_kind, "Protocol kind")->required();
  add_dims(gen);
  add_common(gen);

  std::string convert_source;
  auto* convert = app.add_subcommand("convert", "Build the state-independent measurement");
  convert->add_option("protocol", convert_source, "Protocol file or generator name")->required();
  add_dims(convert);
  add_common(convert);

  std::string verify_source;
  auto* verify = app.add_subcommand("verify", "Check the converted protocol against the original");
  verify->add_option("source", verify_source, "Protocol file, teleport, random, failing or latitude")
      ->required();
  verify->add_option("--ensemble", cfg.ensemble_spec,
                     "tetrahedron | random[:N] | latitude[:THETA[:COUNT]]");
  verify->add_option("--povm", cfg.povm_path, "Use this POVM file instead of converting");
  add_dims(verify);
  add_common(verify);

  std::string theta_grid;
  std::string p_grid;
  std::size_t qubits = 1;
  auto* latitude = app.add_subcommand("latitude", "Cost table of the latitude protocol");
  latitude->add_option("--grid", theta_grid, "Comma-separated theta values in [0, pi/2]");
  latitude->add_option("--p-grid", p_grid, "Comma-separated fallback probabilities in [0, 1/2]");
  latitude->add_option("--n", qubits, "Number of qubits prepared");
  add_common(latitude);

  std::string cost_source;
  auto* cost = app.add_subcommand("cost", "Classical communication cost of a protocol");
  cost->add_option("protocol", cost_source, "Protocol file or generator name")->required();
  add_dims(cost);
  add_common(cost);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "rsplab: " << e.what() << "\n" << app.help();
    return kUsageOrIo;
  }

  try {
    cfg.tolerance = tol_flag ? *tol_flag : env_tolerance();
    if (!(cfg.tolerance > 0.0)) throw UsageError("--tol must be > 0");
    if (*gen) return cmd_gen(gen_kind, cfg, out);
    if (*convert) return cmd_convert(convert_source, cfg, out, err);
    if (*verify) return cmd_verify(verify_source, cfg, out, err);
    if (*latitude) return cmd_latitude(theta_grid, p_grid, qubits, cfg, out, err);
    if (*cost) return cmd_cost(cost_source, cfg, out);
  } catch (const UsageError& e) {
    err << "rsplab: " << e.what() << "\n";
    return kUsageOrIo;
  } catch (const ShapeError& e) {
    err << "rsplab: " << e.what() << "\n";
    return kUsageOrIo;
  } catch (const PreconditionError& e) {
    err << "rsplab: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::exception& e) {
    err << "rsplab: " << e.what() << "\n";
    return kUsageOrIo;
  }
  return kUsageOrIo;
}

}  // namespace rsplab::cli

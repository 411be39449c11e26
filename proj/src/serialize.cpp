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

#include "rsplab/serialize.hpp"

namespace rsplab {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get_as(const Json& j, const char* key) {
  try {
    return require(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

Json branch_to_json(const FaithfulRspProtocol& p, const MessageBranch& b) {
  return Json{{"label", b.label},
              {"p", b.probability},
              {"U", to_json(b.unitary, SubsystemShape{p.d_prime(), b.anc_dim})},
              {"b", to_json(b.byproduct)},
              {"anc_dim", b.anc_dim}};
}

FaithfulRspProtocol branches_from_json(const Json& j) {
  const auto d = get_as<std::size_t>(j, "d");
  const auto d_prime = get_as<std::size_t>(j, "d_prime");
  const Json& list = require(j, "branches");
  if (!list.is_array()) throw FormatError("'branches' must be an array");
  std::vector<MessageBranch> branches;
  for (const Json& b : list) {
    branches.push_back({get_as<std::string>(b, "label"), get_as<double>(b, "p"),
                        matrix_from_json(require(b, "U")), matrix_from_json(require(b, "b")),
                        get_as<std::size_t>(b, "anc_dim")});
  }
  return FaithfulRspProtocol(d, d_prime, std::move(branches));
}

}  // namespace

Json to_json(const ComplexMatrix& m, const std::optional<SubsystemShape>& dims) {
  Json entries = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    entries.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()},
              {"cols", m.cols()},
              {"dims", dims ? dims->dims() : std::vector<std::size_t>{m.rows()}},
              {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const auto rows = get_as<std::size_t>(j, "rows");
  const auto cols = get_as<std::size_t>(j, "cols");
  const Json& entries = require(j, "entries");
  if (!entries.is_array() || entries.size() != rows)
    throw FormatError("matrix 'entries' must hold 'rows' rows");
  std::vector<Complex> data;
  data.reserve(rows * cols);
  for (const Json& row : entries) {
    if (!row.is_array() || row.size() != cols)
      throw FormatError("matrix row must hold 'cols' entries");
    for (const Json& z : row) {
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
        throw FormatError("matrix entry must be a [re, im] pair");
      data.emplace_back(z[0].get<double>(), z[1].get<double>());
    }
  }
  try {
    ComplexMatrix m(rows, cols, std::move(data));
    if (j.contains("dims")) {
      const auto dims = j.at("dims").get<std::vector<std::size_t>>();
      std::size_t product = 1;
      for (std::size_t d : dims) product *= d;
      if (product != rows) throw FormatError("matrix 'dims' product does not match 'rows'");
    }
    return m;
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

Json to_json(const FaithfulRspProtocol& p) {
  Json branches = Json::array();
  for (const MessageBranch& b : p.branches()) branches.push_back(branch_to_json(p, b));
  return Json{{"d", p.d()}, {"d_prime", p.d_prime()}, {"branches", std::move(branches)}};
}

Json to_json(const NonFaithfulRspProtocol& p) {
  Json j = to_json(p.base());
  j["p_f"] = p.p_f();
  j["rho_f"] = to_json(p.rho_f());
  return j;
}

AnyProtocol protocol_from_json(const Json& j) {
  try {
    FaithfulRspProtocol base = branches_from_json(j);
    if (j.contains("p_f") || j.contains("rho_f"))
      return NonFaithfulRspProtocol(std::move(base), get_as<double>(j, "p_f"),
                                    matrix_from_json(require(j, "rho_f")));
    return base;
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(std::string("invalid protocol: ") + e.what());
  }
}

Json to_json(const Povm& povm) {
  Json elements = Json::array();
  for (const ComplexMatrix& e : povm.elements()) elements.push_back(to_json(e, povm.space_shape()));
  return Json{{"space_shape", povm.space_shape().dims()},
              {"labels", povm.labels()},
              {"elements", std::move(elements)}};
}

Json to_json(const ObliviousPovm& op) {
  Json j = to_json(op.povm);
  j["source_protocol"] = op.source_fingerprint;
  if (op.failure_index) {
    j["failure_label"] = op.povm.labels().at(*op.failure_index);
    j["failure_scale"] = op.failure_scale;
  }
  return j;
}

ObliviousPovm oblivious_povm_from_json(const Json& j) {
  try {
    const auto shape = get_as<std::vector<std::size_t>>(j, "space_shape");
    const auto labels = get_as<std::vector<std::string>>(j, "labels");
    const Json& list = require(j, "elements");
    if (!list.is_array()) throw FormatError("'elements' must be an array");
    std::vector<ComplexMatrix> elements;
    for (const Json& e : list) elements.push_back(matrix_from_json(e));
    ObliviousPovm op{Povm(SubsystemShape(shape), labels, std::move(elements)),
                     j.value("source_protocol", std::string{}), std::nullopt, 0.0};
    if (j.contains("failure_label")) {
      op.failure_index = op.povm.index_of(get_as<std::string>(j, "failure_label"));
      if (!op.failure_index) throw FormatError("'failure_label' names no element");
      op.failure_scale = get_as<double>(j, "failure_scale");
    }
    return op;
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(std::string("invalid POVM: ") + e.what());
  }
}

Json to_json(const Ensemble& e) {
  Json states = Json::array();
  for (const PureState& s : e.states()) states.push_back(to_json(s.as_column()));
  return Json{{"dim", e.dim()}, {"labels", e.labels()}, {"states", std::move(states)}};
}

Ensemble ensemble_from_json(const Json& j) {
  try {
    const auto labels = get_as<std::vector<std::string>>(j, "labels");
    std::vector<PureState> states;
    for (const Json& s : require(j, "states")) {
      const ComplexMatrix v = matrix_from_json(s);
      if (v.cols() != 1) throw FormatError("ensemble state must be a column vector");
      states.push_back(PureState::normalized({v.data().begin(), v.data().end()}));
    }
    Ensemble e(std::move(states), labels);
    if (e.dim() != get_as<std::size_t>(j, "dim")) throw FormatError("ensemble 'dim' mismatch");
    return e;
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(std::string("invalid ensemble: ") + e.what());
  }
}

Json to_json(const CostReport& c) {
  return Json{{"worst_case_bits", c.worst_case_bits},
              {"entropy_bits", c.entropy_bits},
              {"message_count", c.message_count}};
}

Json to_json(const ValidationReport& r) {
  return Json{{"passed", r.passed},
              {"probability_sum", r.probability_sum},
              {"max_residual", r.max_residual},
              {"residuals", r.residuals},
              {"failures", r.failures}};
}

Json to_json(const EquivalenceReport& r) {
  Json entries = Json::array();
  for (const EquivalenceEntry& e : r.entries) {
    Json row{{"state_index", e.state_index},
             {"state_label", e.state_label},
             {"message", e.message},
             {"expected_prob", e.expected_probability},
             {"measured_prob", e.measured_probability},
             {"prob_deviation", e.probability_deviation}};
    row["state_distance"] = e.state_checked ? Json(e.state_distance) : Json(nullptr);
    entries.push_back(std::move(row));
  }
  return Json{{"passed", r.passed},
              {"tolerance", r.tolerance},
              {"ensemble_generic", r.ensemble_generic},
              {"ensemble_rank", r.ensemble_rank},
              {"max_prob_deviation", r.max_probability_deviation},
              {"max_state_distance", r.max_state_distance},
              {"max_prob_spread", r.max_probability_spread},
              {"diagnostics", r.diagnostics},
              {"entries", std::move(entries)}};
}

Json to_json(const EntanglementReport& r) {
  Json per = Json::array();
  for (const MessageFidelity& m : r.per_message)
    per.push_back({{"label", m.label}, {"probability", m.probability}, {"fidelity", m.fidelity}});
  return Json{{"mean_fidelity", r.mean_fidelity},
              {"min_fidelity", r.min_fidelity},
              {"per_message", std::move(per)}};
}

Json to_json(const LatitudeCost& c) {
  return Json{{"theta", c.theta},
              {"p", c.p},
              {"H", c.entropy},
              {"n", c.n},
              {"failure_location_bits", c.failure_location_bits},
              {"success_bits", c.success_bits},
              {"teleport_bits", c.teleport_bits},
              {"total_bits", c.total_bits},
              {"cost_per_qubit", c.per_qubit()},
              {"beats_teleportation", c.beats_teleportation()}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace rsplab

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

#pragma once

// JSON forms of every rsplab artifact.
//
// Matrix:   {"rows": r, "cols": c, "dims": [...], "entries": [[[re, im], ...], ...]}
// Protocol: {"d", "d_prime", "branches": [{"label", "p", "U", "b", "anc_dim"}],
//            optional "p_f", "rho_f"}
// POVM:     {"space_shape": [...], "labels": [...], "elements": [matrix...],
//            optional "source_protocol", "failure_label", "failure_scale"}
// Ensemble: {"dim", "labels": [...], "states": [matrix...]}
//
// Doubles are written in shortest round-trip form, so rational-entry
// artifacts serialize bit-stably.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rsplab/conversion.hpp"
#include "rsplab/latitude.hpp"
#include "rsplab/quantum.hpp"
#include "rsplab/rsp_model.hpp"

namespace rsplab {

using Json = nlohmann::json;

/// Raised on malformed JSON documents.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `dims` defaults to [rows].
Json to_json(const ComplexMatrix& m, const std::optional<SubsystemShape>& dims = std::nullopt);
ComplexMatrix matrix_from_json(const Json& j);

Json to_json(const FaithfulRspProtocol& p);
Json to_json(const NonFaithfulRspProtocol& p);
using AnyProtocol = std::variant<FaithfulRspProtocol, NonFaithfulRspProtocol>;
AnyProtocol protocol_from_json(const Json& j);

Json to_json(const Povm& povm);
Json to_json(const ObliviousPovm& op);
ObliviousPovm oblivious_povm_from_json(const Json& j);

Json to_json(const Ensemble& e);
Ensemble ensemble_from_json(const Json& j);

Json to_json(const CostReport& c);
Json to_json(const ValidationReport& r);
Json to_json(const EquivalenceReport& r);
Json to_json(const EntanglementReport& r);
Json to_json(const LatitudeCost& c);

/// Pretty-printed document with a trailing newline.
std::string dump(const Json& j);

}  // namespace rsplab

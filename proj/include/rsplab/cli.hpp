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

// Batch command-line front end. Subcommands: gen, convert, verify, latitude,
// cost. Exit codes are a stable contract for CI.

#include <iosfwd>
#include <span>
#include <string>

namespace rsplab::cli {

enum ExitCode : int {
  kPass = 0,
  kUsageOrIo = 1,
  kValidationFailure = 2,
};

/// Default tolerance, overridable by the RSPLAB_TOL environment variable and
/// then by --tol.
inline constexpr double kDefaultTolerance = 1e-9;

/// Structural checks (normalization residual, POVM completeness and
/// positivity) run at tol / kStructuralRatio.
inline constexpr double kStructuralRatio = 10.0;

/// `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace rsplab::cli

// Copyright 2026 The qtradeoff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QTRADEOFF_TOOLS_CLI_H
#define QTRADEOFF_TOOLS_CLI_H

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qtradeoff/oracle.h"

namespace qtradeoff::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line. Data goes to `out` unless --output names a file;
/// diagnostics go to `err`. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// 17 significant digits.
std::string format_csv_number(double v);

// Long-format CSV bodies: `#` comment lines with the invocation, a header row,
// then one row per point.
std::string transform_curves_csv(double s_psi, std::span<const double> s_phi_list, int points,
                                 std::string_view invocation);
std::string semiclassical_curves_csv(std::span<const double> betas, int points,
                                     std::string_view invocation);
std::string quantum_inversion_csv(double beta, double overlap_in, int points,
                                  std::string_view invocation);

enum class Suite { kTransform, kSemiclassical, kQuantum, kAll };

struct VerifyRow {
  std::string suite;
  std::string curve;
  OracleReport report;
};

/// Oracle probes over the default grids: 11 p-points per curve on the default
/// transform and semiclassical datasets, and Hadamard-pair inputs for the
/// quantum inversion.
std::vector<VerifyRow> run_verification(Suite suite, const SearchConfig& cfg);

}  // namespace qtradeoff::cli

#endif  // QTRADEOFF_TOOLS_CLI_H

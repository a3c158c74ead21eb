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

// Brute-force search over trace-non-increasing CP maps, used to check that no
// operation beats the analytic frontiers and that the constructive
// operations reach them. The search is one-sided: it can find
// counterexamples, never certify optimality.

#ifndef QTRADEOFF_ORACLE_H
#define QTRADEOFF_ORACLE_H

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "qtradeoff/qstate.h"
#include "qtradeoff/tradeoff.h"
#include "qtradeoff/transform.h"

namespace qtradeoff {

struct SearchConfig {
  int restarts = 256;
  int refine_iters = 500;
  int kraus_rank = 2;
  std::uint64_t seed = 0;
  double tolerance = 1e-6;

  void validate() const;
};

struct OracleReport {
  double p_target = 0.0;
  /// Best feasible merit found, re-evaluated through worst_case_merit.
  TradeoffPoint best_point;
  /// Merit of the constructive seed (restart 0).
  TradeoffPoint seed_point;
  double frontier_value = 0.0;
  /// best_point.F - frontier_value; positive values beat the frontier.
  double violation = 0.0;
  std::uint64_t samples_evaluated = 0;
};

/// Weight of the probability shortfall in the penalized objective.
inline constexpr double kPenaltyWeight = 1e3;
/// A candidate is feasible when its worst-case probability is at least
/// p_target - kProbSlack.
inline constexpr double kProbSlack = 1e-12;

using Rng = std::mt19937_64;

/// Independent stream for (seed, stream, substream).
Rng split_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0);

/// Kraus operators with standard-normal entries, rescaled so that the largest
/// eigenvalue of sum K^dag K equals `effect_norm`.
std::vector<Matrix2> random_kraus(int rank, Rng& rng, double effect_norm);

/// As random_kraus with effect_norm uniform in (0, 1].
QuantumOperation random_operation(int rank, Rng& rng);

/// Rescales the list so that sum K^dag K <= I. Feasible lists are untouched.
void project_kraus(std::vector<Matrix2>& kraus);

/// Objective over a (projected) Kraus list; larger is better.
using KrausObjective = std::function<double(std::span<const Matrix2>)>;

/// Derivative-free local search over the real and imaginary parts of the
/// Kraus entries. Every candidate is projected before it is evaluated, and
/// the returned operation is never worse than `start`.
QuantumOperation refine_operation(const QuantumOperation& start, const KrausObjective& objective,
                                  int iters);

/// Uniform grid of n points on [lo, 1]; the single point 1 when lo == 1.
std::vector<double> uniform_grid(double lo, int n);

/// For each p in `p_grid`, the best worst-case fidelity found over operations
/// with worst-case probability >= p for psi -> phi on the canonical pairs with
/// overlaps (s_psi, s_phi), against tradeoff_fidelity.
std::vector<OracleReport> probe_transform_frontier(double s_psi, double s_phi,
                                                   std::span<const double> p_grid,
                                                   const SearchConfig& cfg);

struct SemiclassicalMode {};
struct QuantumMode {
  StatePair psi;
};
using InversionMode = std::variant<SemiclassicalMode, QuantumMode>;

/// Semiclassical mode searches diagonal single-Kraus inverters diag(a, b) with
/// max(|a|, |b|) <= 1 against every diagonal input; quantum mode searches
/// general operations restoring psi from its contracted image.
std::vector<OracleReport> probe_inversion_frontier(double beta, const InversionMode& mode,
                                                   std::span<const double> p_grid,
                                                   const SearchConfig& cfg);

/// Golden-section minimization of a unimodal function on [lo, hi].
double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               int iters = 80);

}  // namespace qtradeoff

#endif  // QTRADEOFF_ORACLE_H

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

#ifndef QTRADEOFF_TRADEOFF_H
#define QTRADEOFF_TRADEOFF_H

#include <optional>
#include <vector>

#include "qtradeoff/qstate.h"
#include "qtradeoff/transform.h"

namespace qtradeoff {

/// Worst-case success probability and worst-case fidelity of an operation.
struct TradeoffPoint {
  double p = 0.0;
  double F = 0.0;
};

/// Overlaps of the input and target pairs a transform frontier was built for.
struct PairOverlaps {
  double s_psi = 0.0;
  double s_phi = 0.0;
};

/// Sampled frontier, sorted by strictly increasing p with non-increasing F.
struct TradeoffCurve {
  std::vector<TradeoffPoint> points;
  std::optional<PairOverlaps> overlaps;

  /// Throws InvalidInput when the ordering invariants do not hold.
  void validate() const;
};

/// p = min(p+, p-) and F = min over +- of F(|phi_pm><phi_pm|, rho_pm). A
/// member whose outcome probability is below kProbFloor contributes F = 0.
TradeoffPoint worst_case_merit(const QuantumOperation& op, const StatePair& psi,
                               const StatePair& phi);

struct Anchors {
  double p0 = 1.0;  ///< probability of the exact transformation
  double f0 = 1.0;  ///< fidelity of doing nothing
};

/// Requires 0 <= s_phi <= s_psi < 1.
Anchors anchor_points(double s_psi, double s_phi);

/// Best worst-case fidelity reachable with worst-case probability p. Equal to
/// 1 for p <= p0.
double tradeoff_fidelity(double p, double s_psi, double s_phi);

/// Pure pair with overlap `s` in the x-z Bloch plane, mirror symmetric about
/// the x axis; the plus member sits above the axis.
StatePair canonical_pair(double s);

/// Pair obtained by tilting each member of `phi` towards the symmetry axis so
/// that |<xi_pm|phi_pm>| = f. The two members may meet on the axis but not
/// cross it.
StatePair xi_pair(const StatePair& phi, double f);

/// `n` points uniformly spaced in p on [p0, 1]. When s_phi = s_psi the
/// frontier is the single point (1, 1).
TradeoffCurve frontier_curve(double s_psi, double s_phi, int n);

}  // namespace qtradeoff

#endif  // QTRADEOFF_TRADEOFF_H

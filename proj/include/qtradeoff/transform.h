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

#ifndef QTRADEOFF_TRANSFORM_H
#define QTRADEOFF_TRANSFORM_H

#include <optional>

#include "qtradeoff/qstate.h"

namespace qtradeoff {

/// Two pure states with equal prior weight.
struct StatePair {
  PureQubit plus;
  PureQubit minus;

  double overlap() const { return pure_overlap(plus, minus); }
};

/// Largest mean success probability of the exact transformation between
/// pure pairs with overlaps `s_in` and `s_out`: min{(1 - s_in)/(1 - s_out), 1}.
/// Throws DegenerateTarget when s_out = 1 > s_in.
double max_probability_pure(double s_in, double s_out);

/// Same for mixed targets, with the target overlap replaced by the Uhlmann
/// fidelity F(rho_plus, rho_minus).
double max_probability_mixed(double s_in, const DensityMatrix& rho_plus,
                             const DensityMatrix& rho_minus);

/// Feasibility tolerance on the largest singular value of a constructed
/// Kraus operator.
inline constexpr double kFeasibilityTol = 1e-10;

/// Single Kraus operator A acting as A|psi_pm> = sqrt(p) e^{i chi_pm}|phi_pm>,
/// with chi_plus = 0 and chi_minus chosen to minimize the operator norm.
/// Throws InvalidInput when the input pair is linearly dependent.
Matrix2 balanced_kraus_operator(const StatePair& psi, const StatePair& phi, double p);

/// Wraps balanced_kraus_operator; empty when its norm exceeds
/// 1 + kFeasibilityTol.
std::optional<QuantumOperation> build_balanced_kraus(const StatePair& psi, const StatePair& phi,
                                                     double p);

/// Largest p accepted by build_balanced_kraus, found by 64 bisection steps on
/// [0, 1]. Requires |<phi+|phi->| <= |<psi+|psi->| < 1: a single Kraus
/// operator cannot merge a pair deterministically.
double max_feasible_probability_constructive(const StatePair& psi, const StatePair& phi);

/// Bloch axis of the pi-rotation that exchanges the two members of `pair`.
/// For antipodal pairs the axis orthogonal to both with the largest |x|
/// (then |y|) component is returned.
Vector3 symmetry_axis(const StatePair& pair);

/// n . sigma, the pi-rotation about the unit Bloch axis `n`.
Matrix2 mirror_unitary(const Vector3& n);

/// True when `pair` is exchanged by the pi-rotation about `axis`.
bool is_mirror_symmetric(const StatePair& pair, const Vector3& axis, double tol = 1e-9);

/// Averages `op` with its mirror image S op S, where S exchanges phi_plus and
/// phi_minus. Both input and target pairs must be symmetric about the same
/// axis. The result has Kraus set {K/sqrt2} u {S K S/sqrt2}, compressed when
/// it would exceed four operators.
QuantumOperation symmetrize_operation(const QuantumOperation& op, const StatePair& psi,
                                      const StatePair& phi);

}  // namespace qtradeoff

#endif  // QTRADEOFF_TRANSFORM_H

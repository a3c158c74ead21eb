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

#include "qtradeoff/tradeoff.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qtradeoff {

namespace {

void check_pair_overlaps(double s_psi, double s_phi) {
  if (!(s_psi >= 0.0 && s_psi < 1.0)) {
    throw InvalidInput("input overlap must lie in [0, 1)");
  }
  if (!(s_phi >= 0.0)) {
    throw InvalidInput("target overlap must lie in [0, 1]");
  }
  if (s_phi > s_psi) {
    throw InvalidInput("target overlap must not exceed the input overlap");
  }
}

}  // namespace

void TradeoffCurve::validate() const {
  for (const auto& pt : points) {
    if (!(pt.p >= 0.0 && pt.p <= 1.0 && pt.F >= 0.0 && pt.F <= 1.0)) {
      throw InvalidInput("tradeoff point outside the unit square");
    }
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].p > points[i - 1].p)) {
      throw InvalidInput("tradeoff curve is not strictly increasing in p");
    }
    if (points[i].F > points[i - 1].F) {
      throw InvalidInput("tradeoff curve fidelity increases with p");
    }
  }
}

TradeoffPoint worst_case_merit(const QuantumOperation& op, const StatePair& psi,
                               const StatePair& phi) {
  const auto member = [&](const PureQubit& in, const PureQubit& target) {
    const OperationOutcome out = apply_operation(op, in.density());
    const double f = out.occurred() ? fidelity_with_pure(target, *out.state) : 0.0;
    return TradeoffPoint{out.probability, f};
  };
  const TradeoffPoint plus = member(psi.plus, phi.plus);
  const TradeoffPoint minus = member(psi.minus, phi.minus);
  return TradeoffPoint{std::min(plus.p, minus.p), std::min(plus.F, minus.F)};
}

Anchors anchor_points(double s_psi, double s_phi) {
  check_pair_overlaps(s_psi, s_phi);
  return Anchors{(1.0 - s_psi) / (1.0 - s_phi),
                 std::cos(0.5 * (std::acos(s_phi) - std::acos(s_psi)))};
}

double tradeoff_fidelity(double p, double s_psi, double s_phi) {
  check_pair_overlaps(s_psi, s_phi);
  if (!(p > 0.0 && p <= 1.0)) {
    throw InvalidInput("probability must lie in (0, 1]");
  }
  const Anchors anchors = anchor_points(s_psi, s_phi);
  if (p <= anchors.p0) {
    return 1.0;
  }
  if (p == 1.0) {
    return anchors.f0;
  }
  // Overlap of the pure pair reachable exactly with probability p.
  const double s_reached = std::clamp(1.0 - (1.0 - s_psi) / p, -1.0, 1.0);
  return std::cos(0.5 * (std::acos(s_phi) - std::acos(s_reached)));
}

StatePair canonical_pair(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw InvalidInput("overlap must lie in [0, 1]");
  }
  // Bloch polar angles pi/2 -+ acos(s); amplitudes use the half angles.
  const double half = 0.5 * std::acos(s);
  const double quarter = 0.25 * std::numbers::pi;
  return StatePair{PureQubit(std::cos(quarter - half), std::sin(quarter - half)),
                   PureQubit(std::cos(quarter + half), std::sin(quarter + half))};
}

StatePair xi_pair(const StatePair& phi, double f) {
  if (!(f >= 0.0 && f <= 1.0)) {
    throw InvalidInput("fidelity must lie in [0, 1]");
  }
  if (f == 1.0) {
    return phi;
  }
  const Vector3 axis = symmetry_axis(phi);
  const Vector3 r = phi.plus.bloch();
  const double to_axis = std::acos(std::clamp(r.dot(axis), -1.0, 1.0));
  const double tilt = 2.0 * std::acos(f);
  if (tilt > to_axis + 1e-12) {
    throw InvalidInput("requested tilt would move the pair across its symmetry axis");
  }
  const Vector3 k = r.cross(axis);
  if (k.norm() < 1e-12) {
    return phi;
  }
  const Vector3 u = k.normalized();
  // Rodrigues rotation about u; u is orthogonal to r.
  const Vector3 tilted = r * std::cos(tilt) + u.cross(r) * std::sin(tilt);
  const Vector3 mirrored = 2.0 * axis.dot(tilted) * axis - tilted;
  return StatePair{PureQubit::from_bloch(tilted.normalized()),
                   PureQubit::from_bloch(mirrored.normalized())};
}

TradeoffCurve frontier_curve(double s_psi, double s_phi, int n) {
  check_pair_overlaps(s_psi, s_phi);
  if (n < 2) {
    throw InvalidInput("a curve needs at least two points");
  }
  TradeoffCurve curve;
  curve.overlaps = PairOverlaps{s_psi, s_phi};
  if (s_phi == s_psi) {
    curve.points.push_back({1.0, 1.0});
    return curve;
  }
  const double p0 = anchor_points(s_psi, s_phi).p0;
  curve.points.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double p = i == n - 1 ? 1.0 : p0 + (1.0 - p0) * i / (n - 1);
    curve.points.push_back({p, tradeoff_fidelity(p, s_psi, s_phi)});
  }
  return curve;
}

}  // namespace qtradeoff

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

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "test_util.h"

using namespace qtradeoff;

namespace {

// (s_psi, s_phi) combinations drawn from the default datasets.
const std::vector<std::pair<double, double>> kCases = {
    {0.6, 0.0}, {0.6, 0.3}, {0.6, 0.5}, {0.9, 0.0}, {0.9, 0.45}, {0.99, 0.09}, {0.99, 0.89}};

}  // namespace

TEST(anchor_points, examples) {
  const Anchors equal = anchor_points(0.9, 0.9);
  EXPECT_EQ(equal.p0, 1.0);
  EXPECT_NEAR(equal.f0, 1.0, 1e-15);

  const Anchors a = anchor_points(0.6, 0.0);
  EXPECT_NEAR(a.p0, 0.4, 1e-15);
  EXPECT_NEAR(a.f0, 0.948683298050514, 1e-12);
}

TEST(anchor_points, rejects_bad_overlaps) {
  EXPECT_THROW(anchor_points(0.3, 0.5), InvalidInput);
  EXPECT_THROW(anchor_points(1.0, 0.5), InvalidInput);
  EXPECT_THROW(anchor_points(0.5, -0.1), InvalidInput);
}

TEST(tradeoff_fidelity, examples) {
  EXPECT_NEAR(tradeoff_fidelity(0.4, 0.6, 0.0), 1.0, 1e-12);
  EXPECT_NEAR(tradeoff_fidelity(1.0, 0.6, 0.0), 0.948683298050514, 1e-12);
  EXPECT_NEAR(tradeoff_fidelity(0.7, 0.6, 0.0), 0.975578777676424, 1e-12);
  EXPECT_EQ(tradeoff_fidelity(0.1, 0.6, 0.0), 1.0);
  EXPECT_THROW(tradeoff_fidelity(0.0, 0.6, 0.0), InvalidInput);
  EXPECT_THROW(tradeoff_fidelity(1.5, 0.6, 0.0), InvalidInput);
}

TEST(tradeoff_fidelity, anchors_are_consistent) {
  for (const auto& [s_psi, s_phi] : kCases) {
    const Anchors a = anchor_points(s_psi, s_phi);
    EXPECT_NEAR(tradeoff_fidelity(a.p0, s_psi, s_phi), 1.0, 1e-12);
    EXPECT_NEAR(tradeoff_fidelity(1.0, s_psi, s_phi), a.f0, 1e-12);
  }
}

TEST(xi_pair, examples) {
  const StatePair phi = canonical_pair(0.0);
  const StatePair same = xi_pair(phi, 1.0);
  EXPECT_NEAR(pure_overlap(same.plus, phi.plus), 1.0, 1e-15);
  EXPECT_NEAR(pure_overlap(same.minus, phi.minus), 1.0, 1e-15);

  EXPECT_NEAR(xi_pair(phi, 0.95).overlap(), 0.593274809847848, 1e-12);
  EXPECT_NEAR(xi_pair(phi, anchor_points(0.6, 0.0).f0).overlap(), 0.6, 1e-12);
  EXPECT_THROW(xi_pair(phi, 0.5), InvalidInput);
  EXPECT_THROW(xi_pair(phi, 1.2), InvalidInput);
}

TEST(xi_pair, geometry) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double s_phi = 0.95 * unit(rng);
    const StatePair phi = test_util::rotate(test_util::random_unitary(rng), canonical_pair(s_phi));
    // Tilts up to the axis.
    const double f_min = std::cos(0.25 * std::acos(s_phi));
    const double f = f_min + (1.0 - f_min) * unit(rng);
    const StatePair xi = xi_pair(phi, f);
    EXPECT_NEAR(pure_overlap(xi.plus, phi.plus), f, 1e-12);
    EXPECT_NEAR(pure_overlap(xi.minus, phi.minus), f, 1e-12);
    EXPECT_GE(xi.overlap(), s_phi - 1e-12);
    const Vector3 normal = phi.plus.bloch().cross(phi.minus.bloch());
    EXPECT_NEAR(normal.normalized().dot(xi.plus.bloch()), 0.0, 1e-10);
    EXPECT_NEAR(normal.normalized().dot(xi.minus.bloch()), 0.0, 1e-10);
  }
}

TEST(tradeoff_fidelity, sweep_consistency) {
  for (const auto& [s_psi, s_phi] : kCases) {
    const StatePair phi = canonical_pair(s_phi);
    const double f0 = anchor_points(s_psi, s_phi).f0;
    for (int k = 0; k < 20; ++k) {
      const double f = f0 + (1.0 - f0) * (k + 0.5) / 20;
      const double p = max_probability_pure(s_psi, xi_pair(phi, f).overlap());
      EXPECT_NEAR(tradeoff_fidelity(p, s_psi, s_phi), f, 1e-9)
          << s_psi << ' ' << s_phi << ' ' << f;
    }
  }
}

TEST(tradeoff, symmetric_pair_fidelity_identity) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double radius = std::sqrt(unit(rng));
    const double angle = 2.0 * std::numbers::pi * unit(rng);
    const double beta = radius * std::cos(angle);
    const double gamma = radius * std::sin(angle);
    const DensityMatrix plus(Matrix2(0.5 * (Matrix2::Identity() + beta * pauli::x() + gamma * pauli::z())));
    const DensityMatrix minus(Matrix2(0.5 * (Matrix2::Identity() - beta * pauli::x() + gamma * pauli::z())));
    EXPECT_NEAR(uhlmann_fidelity(plus, minus), std::sqrt(1.0 - beta * beta), 1e-10);
  }
}

TEST(tradeoff, frontier_is_achievable) {
  for (const auto& [s_psi, s_phi] : kCases) {
    const StatePair psi = canonical_pair(s_psi);
    const StatePair phi = canonical_pair(s_phi);
    const double p0 = anchor_points(s_psi, s_phi).p0;
    for (int k = 0; k <= 20; ++k) {
      const double p = k == 20 ? 1.0 : p0 + (1.0 - p0) * k / 20;
      const double f = tradeoff_fidelity(p, s_psi, s_phi);
      const auto op = build_balanced_kraus(psi, xi_pair(phi, f), p);
      ASSERT_TRUE(op.has_value()) << s_psi << ' ' << s_phi << ' ' << p;
      const TradeoffPoint merit = worst_case_merit(*op, psi, phi);
      EXPECT_GE(merit.p, p - 1e-8);
      EXPECT_GE(merit.F, f - 1e-8);
    }
  }
}

TEST(worst_case_merit, examples) {
  const StatePair psi = canonical_pair(0.6);
  const StatePair phi = canonical_pair(0.0);
  const TradeoffPoint same = worst_case_merit(QuantumOperation::identity(), psi, psi);
  EXPECT_NEAR(same.p, 1.0, 1e-15);
  EXPECT_NEAR(same.F, 1.0, 1e-15);

  const TradeoffPoint idle = worst_case_merit(QuantumOperation::identity(), psi, phi);
  EXPECT_NEAR(idle.p, 1.0, 1e-15);
  EXPECT_NEAR(idle.F, pure_overlap(psi.plus, phi.plus), 1e-12);
  EXPECT_NEAR(idle.F, anchor_points(0.6, 0.0).f0, 1e-12);

  const auto exact = build_balanced_kraus(psi, phi, 0.4);
  ASSERT_TRUE(exact.has_value());
  const TradeoffPoint best = worst_case_merit(*exact, psi, phi);
  EXPECT_NEAR(best.p, 0.4, 1e-8);
  EXPECT_NEAR(best.F, 1.0, 1e-8);
}

TEST(worst_case_merit, annihilated_member_has_zero_fidelity) {
  const StatePair psi{PureQubit::zero(), PureQubit::one()};
  Matrix2 projector = Matrix2::Zero();
  projector(0, 0) = 1.0;
  const TradeoffPoint merit = worst_case_merit(QuantumOperation::single(projector), psi, psi);
  EXPECT_EQ(merit.p, 0.0);
  EXPECT_EQ(merit.F, 0.0);
}

TEST(frontier_curve, endpoints_and_invariants) {
  for (const auto& [s_psi, s_phi] : kCases) {
    const TradeoffCurve curve = frontier_curve(s_psi, s_phi, 50);
    ASSERT_EQ(curve.points.size(), 50u);
    const Anchors a = anchor_points(s_psi, s_phi);
    EXPECT_NEAR(curve.points.front().p, a.p0, 1e-12);
    EXPECT_NEAR(curve.points.front().F, 1.0, 1e-12);
    EXPECT_EQ(curve.points.back().p, 1.0);
    EXPECT_NEAR(curve.points.back().F, a.f0, 1e-12);
    EXPECT_NO_THROW(curve.validate());
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
      EXPECT_LT(curve.points[i].F, curve.points[i - 1].F);
    }
  }
}

TEST(frontier_curve, degenerate_and_invalid) {
  const TradeoffCurve flat = frontier_curve(0.4, 0.4, 10);
  ASSERT_EQ(flat.points.size(), 1u);
  EXPECT_EQ(flat.points[0].p, 1.0);
  EXPECT_EQ(flat.points[0].F, 1.0);
  EXPECT_THROW(frontier_curve(0.6, 0.0, 1), InvalidInput);
  EXPECT_THROW(frontier_curve(0.2, 0.6, 10), InvalidInput);
}

TEST(tradeoff_curve, validate_rejects_bad_curves) {
  TradeoffCurve rising;
  rising.points = {{0.5, 0.9}, {0.8, 0.95}};
  EXPECT_THROW(rising.validate(), InvalidInput);
  TradeoffCurve unordered;
  unordered.points = {{0.8, 0.9}, {0.5, 0.8}};
  EXPECT_THROW(unordered.validate(), InvalidInput);
  TradeoffCurve outside;
  outside.points = {{1.2, 0.9}};
  EXPECT_THROW(outside.validate(), InvalidInput);
}

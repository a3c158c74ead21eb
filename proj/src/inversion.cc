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

#include "qtradeoff/inversion.h"

#include <cmath>

namespace qtradeoff {

namespace {

void check_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw InvalidInput(std::string(what) + " must lie in [0, 1]");
  }
}

void check_semiclassical(double gamma, double beta, double x) {
  check_unit_interval(beta, "beta");
  check_unit_interval(gamma, "gamma");
  check_unit_interval(x, "x");
  if (gamma < beta) {
    throw InvalidInput("gamma must not be smaller than beta");
  }
}

void check_curve_beta(double beta) {
  check_unit_interval(beta, "beta");
  if (beta == 0.0) {
    throw DegenerateContraction(
        "beta = 0 is a projector; it cannot be inverted with nonzero worst-case fidelity");
  }
}

}  // namespace

Contraction::Contraction(double beta) : beta_(beta) { check_unit_interval(beta, "beta"); }

Matrix2 Contraction::matrix() const {
  Matrix2 m = Matrix2::Zero();
  m(0, 0) = 1.0;
  m(1, 1) = beta_;
  return m;
}

QuantumOperation Contraction::operation() const { return QuantumOperation::single(matrix()); }

DiagonalState::DiagonalState(double x) : x_(x) { check_unit_interval(x, "x"); }

QuantumOperation contraction_matrix(double beta) { return Contraction(beta).operation(); }

QuantumOperation inverter_matrix(double gamma) {
  check_unit_interval(gamma, "gamma");
  Matrix2 m = Matrix2::Zero();
  m(0, 0) = gamma;
  m(1, 1) = 1.0;
  return QuantumOperation::single(m);
}

double semiclassical_probability(double gamma, double beta, double x) {
  check_semiclassical(gamma, beta, x);
  const double contracted = x + beta * beta * (1.0 - x);
  if (contracted == 0.0) {
    throw AnnihilatedInput("the contraction annihilates the input state");
  }
  return (gamma * gamma * x + beta * beta * (1.0 - x)) / contracted;
}

double semiclassical_fidelity(double gamma, double beta, double x) {
  check_semiclassical(gamma, beta, x);
  if (x + beta * beta * (1.0 - x) == 0.0) {
    throw AnnihilatedInput("the contraction annihilates the input state");
  }
  const double restored = gamma * gamma * x + beta * beta * (1.0 - x);
  if (restored == 0.0) {
    throw AnnihilatedInput("the inverter annihilates the contracted state");
  }
  return (gamma * x + beta * (1.0 - x)) / std::sqrt(restored);
}

double semiclassical_minimizer(double gamma, double beta) {
  check_semiclassical(gamma, beta, 0.5);
  if (gamma + beta == 0.0) {
    throw DegenerateContraction("gamma = beta = 0 has no worst-case input");
  }
  return beta / (gamma + beta);
}

double semiclassical_worst_fidelity(double gamma, double beta) {
  check_semiclassical(gamma, beta, 0.5);
  if (beta == 0.0) {
    return 0.0;
  }
  return 2.0 * std::sqrt(gamma * beta) / (gamma + beta);
}

double admissible_set_floor(double p_bar) {
  check_unit_interval(p_bar, "probability threshold");
  return std::sqrt(p_bar);
}

double semiclassical_frontier_value(double beta, double p_bar) {
  check_curve_beta(beta);
  check_unit_interval(p_bar, "probability threshold");
  if (p_bar <= beta * beta) {
    return 1.0;
  }
  return semiclassical_worst_fidelity(admissible_set_floor(p_bar), beta);
}

TradeoffCurve semiclassical_frontier(double beta, int n) {
  check_curve_beta(beta);
  if (n < 2) {
    throw InvalidInput("a curve needs at least two points");
  }
  TradeoffCurve curve;
  const double lo = beta * beta;
  if (lo == 1.0) {
    curve.points.push_back({1.0, 1.0});
    return curve;
  }
  curve.points.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double p = i == n - 1 ? 1.0 : lo + (1.0 - lo) * i / (n - 1);
    curve.points.push_back({p, semiclassical_frontier_value(beta, p)});
  }
  return curve;
}

StatePair contracted_pair(double beta, const StatePair& psi) {
  const Matrix2 m = Contraction(beta).matrix();
  return StatePair{PureQubit::normalized(m * psi.plus.amplitudes()),
                   PureQubit::normalized(m * psi.minus.amplitudes())};
}

StatePair inversion_input_pair(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw InvalidInput("overlap must lie in [0, 1]");
  }
  // cos t = sqrt((1 + s)/2), sin t = sqrt((1 - s)/2): the overlap c^2 - s^2
  // comes out exact at s = 0.
  const double c = std::sqrt(0.5 * (1.0 + s));
  const double d = std::sqrt(0.5 * (1.0 - s));
  return StatePair{PureQubit(c, d), PureQubit(c, -d)};
}

TradeoffCurve quantum_inversion_frontier(double beta, const StatePair& psi, int n) {
  check_curve_beta(beta);
  if (n < 2) {
    throw InvalidInput("a curve needs at least two points");
  }
  const StatePair primed = contracted_pair(beta, psi);
  const double s_in = primed.overlap();
  const double s_out = psi.overlap();
  if (s_out >= s_in) {
    TradeoffCurve curve;
    curve.overlaps = PairOverlaps{s_in, s_out};
    curve.points.push_back({1.0, 1.0});
    return curve;
  }
  return frontier_curve(s_in, s_out, n);
}

}  // namespace qtradeoff

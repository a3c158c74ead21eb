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

#ifndef QTRADEOFF_INVERSION_H
#define QTRADEOFF_INVERSION_H

#include "qtradeoff/qstate.h"
#include "qtradeoff/tradeoff.h"
#include "qtradeoff/transform.h"

namespace qtradeoff {

/// The positive contraction diag(1, beta); beta is its smallest singular value.
class Contraction {
 public:
  explicit Contraction(double beta);

  double beta() const { return beta_; }
  Matrix2 matrix() const;
  QuantumOperation operation() const;

 private:
  double beta_;
};

/// Diagonal state diag(x, 1 - x).
class DiagonalState {
 public:
  explicit DiagonalState(double x);

  double x() const { return x_; }
  DensityMatrix density() const { return DensityMatrix::diagonal(x_); }

 private:
  double x_;
};

/// {diag(1, beta)}.
QuantumOperation contraction_matrix(double beta);

/// {diag(gamma, 1)}; at gamma = beta this is the rescaled inverse of the
/// contraction.
QuantumOperation inverter_matrix(double gamma);

// Figures of merit for inverting diag(1, beta) with diag(gamma, 1) on
// diag(x, 1 - x). Require 0 <= beta <= gamma <= 1 and 0 <= x <= 1.
// AnnihilatedInput is thrown when no post-contraction state exists.
double semiclassical_probability(double gamma, double beta, double x);
double semiclassical_fidelity(double gamma, double beta, double x);

/// Worst-case input x* = beta / (gamma + beta).
double semiclassical_minimizer(double gamma, double beta);

/// min over x of semiclassical_fidelity: 2 sqrt(gamma beta) / (gamma + beta).
double semiclassical_worst_fidelity(double gamma, double beta);

/// Smallest gamma whose worst-case probability gamma^2 reaches p_bar.
double admissible_set_floor(double p_bar);

/// Frontier value at threshold p_bar: the worst-case fidelity of the inverter
/// diag(sqrt(p_bar), 1), or 1 when p_bar <= beta^2.
double semiclassical_frontier_value(double beta, double p_bar);

/// `n` points with p_bar uniform on [beta^2, 1]. beta = 1 gives the single
/// point (1, 1); beta = 0 throws DegenerateContraction.
TradeoffCurve semiclassical_frontier(double beta, int n);

/// Pair after the contraction, renormalized.
StatePair contracted_pair(double beta, const StatePair& psi);

/// Pure pair (cos t |0> +- sin t |1>) with overlap `s`: symmetric about the
/// z axis, the eigenbasis of the contraction.
StatePair inversion_input_pair(double s);

/// Frontier for restoring `psi` from its contracted image. When the
/// contraction does not make the pair less distinguishable the result is the
/// single point (1, 1); otherwise it is frontier_curve(s_in, s_out, n) with
/// s_in the contracted overlap and s_out the original one.
TradeoffCurve quantum_inversion_frontier(double beta, const StatePair& psi, int n);

}  // namespace qtradeoff

#endif  // QTRADEOFF_INVERSION_H

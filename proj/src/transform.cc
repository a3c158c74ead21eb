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

#include "qtradeoff/transform.h"

#include <algorithm>
#include <cmath>

namespace qtradeoff {

namespace {

void check_overlap(double s, const char* name) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw InvalidInput(std::string(name) + " must lie in [0, 1]");
  }
}

// Input pairs closer than this to linear dependence are rejected.
constexpr double kIndependenceTol = 1e-12;

}  // namespace

double max_probability_pure(double s_in, double s_out) {
  check_overlap(s_in, "input overlap");
  check_overlap(s_out, "target overlap");
  if (s_out == 1.0) {
    if (s_in == 1.0) {
      return 1.0;
    }
    throw DegenerateTarget("target pair is identical while the input pair is not");
  }
  return std::min((1.0 - s_in) / (1.0 - s_out), 1.0);
}

double max_probability_mixed(double s_in, const DensityMatrix& rho_plus,
                             const DensityMatrix& rho_minus) {
  check_overlap(s_in, "input overlap");
  const double f = uhlmann_fidelity(rho_plus, rho_minus);
  if (f >= 1.0 - kStateTol) {
    if (s_in == 1.0) {
      return 1.0;
    }
    throw DegenerateTarget("target states have unit fidelity");
  }
  return max_probability_pure(s_in, f);
}

Matrix2 balanced_kraus_operator(const StatePair& psi, const StatePair& phi, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidInput("probability must lie in [0, 1]");
  }
  if (psi.overlap() >= 1.0 - kIndependenceTol) {
    throw InvalidInput("input states are linearly dependent");
  }
  const Complex g_in = psi.plus.amplitudes().dot(psi.minus.amplitudes());
  const Complex g_out = phi.plus.amplitudes().dot(phi.minus.amplitudes());
  // Aligning the phases of the two Gram matrices makes them commute; the
  // norm of A is then set by the ratio of their eigenvalues.
  const double chi = std::arg(g_in) - std::arg(g_out);

  Matrix2 in;
  in.col(0) = psi.plus.amplitudes();
  in.col(1) = psi.minus.amplitudes();
  Matrix2 out;
  out.col(0) = phi.plus.amplitudes();
  out.col(1) = std::polar(1.0, chi) * phi.minus.amplitudes();
  return std::sqrt(p) * out * in.inverse();
}

std::optional<QuantumOperation> build_balanced_kraus(const StatePair& psi, const StatePair& phi,
                                                     double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw InvalidInput("probability must lie in (0, 1]");
  }
  const Matrix2 a = balanced_kraus_operator(psi, phi, p);
  if (spectral_norm(a) > 1.0 + kFeasibilityTol) {
    return std::nullopt;
  }
  return QuantumOperation::single(a);
}

double max_feasible_probability_constructive(const StatePair& psi, const StatePair& phi) {
  if (phi.overlap() > psi.overlap() + kIndependenceTol) {
    throw InvalidInput("target pair must be at least as distinguishable as the input pair");
  }
  const auto feasible = [&](double p) {
    return spectral_norm(balanced_kraus_operator(psi, phi, p)) <= 1.0 + kFeasibilityTol;
  };
  if (feasible(1.0)) {
    return 1.0;
  }
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 64; ++i) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

Vector3 symmetry_axis(const StatePair& pair) {
  const Vector3 rp = pair.plus.bloch();
  const Vector3 rm = pair.minus.bloch();
  const Vector3 sum = rp + rm;
  if (sum.norm() > 1e-9) {
    return sum.normalized();
  }
  // Antipodal pair: every axis orthogonal to rp works.
  Vector3 n = Vector3::UnitX() - rp.x() * rp;
  if (n.norm() < 1e-9) {
    n = Vector3::UnitY() - rp.y() * rp;
  }
  n.normalize();
  if (n.x() < 0.0 || (n.x() == 0.0 && n.y() < 0.0)) {
    n = -n;
  }
  return n;
}

Matrix2 mirror_unitary(const Vector3& n) {
  return n.x() * pauli::x() + n.y() * pauli::y() + n.z() * pauli::z();
}

bool is_mirror_symmetric(const StatePair& pair, const Vector3& axis, double tol) {
  const Vector3 rm = pair.minus.bloch();
  const Vector3 reflected = 2.0 * axis.dot(rm) * axis - rm;
  return (reflected - pair.plus.bloch()).norm() <= tol;
}

QuantumOperation symmetrize_operation(const QuantumOperation& op, const StatePair& psi,
                                      const StatePair& phi) {
  const Vector3 axis = symmetry_axis(phi);
  if (!is_mirror_symmetric(psi, axis)) {
    throw InvalidInput("input pair is not symmetric about the target symmetry axis");
  }
  const Matrix2 s = mirror_unitary(axis);
  const double w = std::sqrt(0.5);
  std::vector<Matrix2> kraus;
  kraus.reserve(2 * op.rank());
  for (const auto& k : op.kraus()) {
    kraus.push_back(w * k);
  }
  for (const auto& k : op.kraus()) {
    kraus.push_back(w * s * k * s);
  }
  return QuantumOperation::from_kraus(std::move(kraus));
}

}  // namespace qtradeoff

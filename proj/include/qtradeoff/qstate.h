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

#ifndef QTRADEOFF_QSTATE_H
#define QTRADEOFF_QSTATE_H

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qtradeoff {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Ket = Eigen::Vector2cd;
using Vector3 = Eigen::Vector3d;

/// Tolerance on the squared norm of a pure state.
inline constexpr double kNormTol = 1e-12;
/// Tolerance on hermiticity, trace and positivity of a density matrix.
inline constexpr double kStateTol = 1e-12;
/// Tolerance on the largest eigenvalue of sum_j K_j^dag K_j.
inline constexpr double kTraceTol = 1e-10;
/// Outcomes with probability below this are treated as never occurring.
inline constexpr double kProbFloor = 1e-12;
/// Maximum number of Kraus operators for a qubit-to-qubit map.
inline constexpr std::size_t kMaxKrausRank = 4;

/// Base class of every error raised by the library.
class Error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value violates the invariants of its domain type.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Target pair with unit fidelity while the input pair is distinguishable.
class DegenerateTarget : public Error {
 public:
  using Error::Error;
};

/// Contraction with beta = 0: not invertible with nonzero worst-case fidelity.
class DegenerateContraction : public Error {
 public:
  using Error::Error;
};

/// The input state is mapped to the zero vector.
class AnnihilatedInput : public Error {
 public:
  using Error::Error;
};

namespace pauli {
Matrix2 identity();
Matrix2 x();
Matrix2 y();
Matrix2 z();
}  // namespace pauli

class DensityMatrix;

class BlochVector {
 public:
  BlochVector() = default;
  BlochVector(double x, double y, double z);
  explicit BlochVector(const Vector3& r);

  const Vector3& r() const { return r_; }
  double x() const { return r_.x(); }
  double y() const { return r_.y(); }
  double z() const { return r_.z(); }
  double norm() const { return r_.norm(); }

 private:
  Vector3 r_ = Vector3::Zero();
};

class PureQubit {
 public:
  /// Throws InvalidInput unless |a0|^2 + |a1|^2 = 1 within kNormTol.
  PureQubit(Complex a0, Complex a1);
  explicit PureQubit(const Ket& amplitudes);

  /// Normalizes `v`; throws AnnihilatedInput for the zero vector.
  static PureQubit normalized(const Ket& v);
  /// State with Bloch vector `r`, which must have unit length.
  static PureQubit from_bloch(const Vector3& r);

  static PureQubit zero() { return PureQubit(1.0, 0.0); }
  static PureQubit one() { return PureQubit(0.0, 1.0); }

  const Ket& amplitudes() const { return amplitudes_; }
  DensityMatrix density() const;
  Vector3 bloch() const;

 private:
  Ket amplitudes_;
};

class DensityMatrix {
 public:
  /// Throws InvalidInput unless `entries` is Hermitian, PSD and unit trace
  /// within kStateTol.
  explicit DensityMatrix(const Matrix2& entries);

  static DensityMatrix maximally_mixed();
  static DensityMatrix diagonal(double x);

  const Matrix2& entries() const { return entries_; }

 private:
  Matrix2 entries_;
};

/// Trace-non-increasing CP map on a qubit, given by 1 to 4 Kraus operators.
class QuantumOperation {
 public:
  /// Throws InvalidInput if the list is empty, longer than kMaxKrausRank, or
  /// sum K^dag K exceeds the identity by more than kTraceTol.
  explicit QuantumOperation(std::vector<Matrix2> kraus);

  /// Accepts any number of Kraus operators; lists longer than kMaxKrausRank
  /// are re-expressed through the eigendecomposition of the Choi matrix.
  static QuantumOperation from_kraus(std::vector<Matrix2> kraus);
  static QuantumOperation single(const Matrix2& k);
  static QuantumOperation identity();

  const std::vector<Matrix2>& kraus() const { return kraus_; }
  std::size_t rank() const { return kraus_.size(); }

  /// sum_j K_j^dag K_j.
  Matrix2 effect() const;
  /// Choi matrix sum_{ab} |a><b| (x) E(|a><b|).
  Eigen::Matrix4cd choi() const;

 private:
  std::vector<Matrix2> kraus_;
};

/// Result of applying an operation to a state. `state` is empty when the
/// outcome probability is below kProbFloor.
struct OperationOutcome {
  Matrix2 output;
  double probability = 0.0;
  std::optional<DensityMatrix> state;

  bool occurred() const { return state.has_value(); }
};

BlochVector bloch_from_density(const DensityMatrix& rho);
DensityMatrix density_from_bloch(const BlochVector& r);

/// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)), computed through
/// Hermitian eigendecompositions. Falls back to sqrt(<v|sigma|v>) when one
/// argument is numerically rank one.
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Closed-form qubit fidelity in Bloch coordinates.
double bloch_fidelity(const BlochVector& r1, const BlochVector& r2);

/// sqrt(<phi|rho|phi>).
double fidelity_with_pure(const PureQubit& phi, const DensityMatrix& rho);

/// |<a|b>|.
double pure_overlap(const PureQubit& a, const PureQubit& b);

OperationOutcome apply_operation(const QuantumOperation& op,
                                 const DensityMatrix& rho);

/// Largest eigenvalue of sum_j K_j^dag K_j.
double max_effect_eigenvalue(std::span<const Matrix2> kraus);

/// Largest singular value.
double spectral_norm(const Matrix2& m);

/// Positive square root of a PSD Hermitian matrix. Eigenvalues in
/// [-kStateTol, 0) are clamped; anything lower throws InvalidInput.
Matrix2 sqrt_psd(const Matrix2& m);

/// Row-major "re+imj" entries with 17 significant digits, one row per line.
std::string format_matrix(const Matrix2& m);

}  // namespace qtradeoff

#endif  // QTRADEOFF_QSTATE_H

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

#include "qtradeoff/qstate.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qtradeoff {

namespace {

// Below this smallest eigenvalue a density matrix is handled as rank one
// inside the fidelity computation.
constexpr double kRankOneTol = 1e-14;

Matrix2 hermitian_part(const Matrix2& m) { return 0.5 * (m + m.adjoint()); }

double max_hermitian_deviation(const Matrix2& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Largest eigenvalue of a 2x2 Hermitian matrix, in closed form.
double max_eigenvalue_hermitian(const Matrix2& h) {
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const double half_gap = 0.5 * (a - d);
  return 0.5 * (a + d) + std::hypot(half_gap, std::abs(h(0, 1)));
}

}  // namespace

namespace pauli {
Matrix2 identity() { return Matrix2::Identity(); }
Matrix2 x() {
  Matrix2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
Matrix2 y() {
  Matrix2 m;
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}
Matrix2 z() {
  Matrix2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

// ---------------------------------------------------------------------------
// BlochVector

BlochVector::BlochVector(double x, double y, double z) : BlochVector(Vector3(x, y, z)) {}

BlochVector::BlochVector(const Vector3& r) : r_(r) {
  if (!r.allFinite()) {
    throw InvalidInput("Bloch vector has non-finite components");
  }
  if (r.norm() > 1.0 + kStateTol) {
    throw InvalidInput("Bloch vector lies outside the unit ball (|r| = " +
                       std::to_string(r.norm()) + ")");
  }
}

// ---------------------------------------------------------------------------
// PureQubit

PureQubit::PureQubit(Complex a0, Complex a1) : PureQubit(Ket(a0, a1)) {}

PureQubit::PureQubit(const Ket& amplitudes) : amplitudes_(amplitudes) {
  if (!amplitudes.allFinite()) {
    throw InvalidInput("pure state has non-finite amplitudes");
  }
  if (std::abs(amplitudes.squaredNorm() - 1.0) > kNormTol) {
    throw InvalidInput("pure state is not normalized");
  }
}

PureQubit PureQubit::normalized(const Ket& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw AnnihilatedInput("cannot normalize the zero vector");
  }
  return PureQubit(Ket(v / n));
}

PureQubit PureQubit::from_bloch(const Vector3& r) {
  const double n = r.norm();
  if (std::abs(n - 1.0) > kStateTol) {
    throw InvalidInput("Bloch vector of a pure state must have unit length");
  }
  const Vector3 u = r / n;
  const Complex transverse(u.x(), u.y());
  // Pick the branch away from the pole where the division is ill-conditioned.
  if (u.z() >= 0.0) {
    const double a0 = std::sqrt(0.5 * (1.0 + u.z()));
    return normalized(Ket(a0, transverse / (2.0 * a0)));
  }
  const double a1 = std::sqrt(0.5 * (1.0 - u.z()));
  return normalized(Ket(std::conj(transverse) / (2.0 * a1), a1));
}

DensityMatrix PureQubit::density() const {
  return DensityMatrix(amplitudes_ * amplitudes_.adjoint());
}

Vector3 PureQubit::bloch() const {
  const Complex c = std::conj(amplitudes_(0)) * amplitudes_(1);
  return Vector3(2.0 * c.real(), 2.0 * c.imag(),
                 std::norm(amplitudes_(0)) - std::norm(amplitudes_(1)));
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(const Matrix2& entries) {
  if (!entries.allFinite()) {
    throw InvalidInput("density matrix has non-finite entries");
  }
  if (max_hermitian_deviation(entries) > kStateTol) {
    throw InvalidInput("density matrix is not Hermitian");
  }
  const Complex tr = entries.trace();
  if (std::abs(tr.real() - 1.0) > kStateTol || std::abs(tr.imag()) > kStateTol) {
    throw InvalidInput("density matrix does not have unit trace");
  }
  entries_ = hermitian_part(entries);
  Eigen::SelfAdjointEigenSolver<Matrix2> es(entries_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) < -kStateTol) {
    throw InvalidInput("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix(Matrix2(0.5 * Matrix2::Identity()));
}

DensityMatrix DensityMatrix::diagonal(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidInput("diagonal state requires 0 <= x <= 1");
  }
  Matrix2 m = Matrix2::Zero();
  m(0, 0) = x;
  m(1, 1) = 1.0 - x;
  return DensityMatrix(m);
}

// ---------------------------------------------------------------------------
// QuantumOperation

QuantumOperation::QuantumOperation(std::vector<Matrix2> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty() || kraus_.size() > kMaxKrausRank) {
    throw InvalidInput("an operation needs between 1 and 4 Kraus operators");
  }
  for (const auto& k : kraus_) {
    if (!k.allFinite()) {
      throw InvalidInput("Kraus operator has non-finite entries");
    }
  }
  if (max_effect_eigenvalue(kraus_) > 1.0 + kTraceTol) {
    throw InvalidInput("operation is not trace non-increasing");
  }
}

QuantumOperation QuantumOperation::from_kraus(std::vector<Matrix2> kraus) {
  if (kraus.size() <= kMaxKrausRank) {
    return QuantumOperation(std::move(kraus));
  }
  Eigen::Matrix4cd choi = Eigen::Matrix4cd::Zero();
  for (const auto& k : kraus) {
    Eigen::Vector4cd v;
    v << k(0, 0), k(1, 0), k(0, 1), k(1, 1);
    choi += v * v.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(choi);
  const double cutoff = 1e-15 * std::max(1.0, es.eigenvalues().maxCoeff());
  std::vector<Matrix2> compressed;
  for (int i = 3; i >= 0; --i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda <= cutoff) {
      continue;
    }
    const Eigen::Vector4cd v = std::sqrt(lambda) * es.eigenvectors().col(i);
    Matrix2 k;
    k << v(0), v(2), v(1), v(3);
    compressed.push_back(k);
  }
  if (compressed.empty()) {
    compressed.push_back(Matrix2::Zero());
  }
  return QuantumOperation(std::move(compressed));
}

QuantumOperation QuantumOperation::single(const Matrix2& k) {
  return QuantumOperation(std::vector<Matrix2>{k});
}

QuantumOperation QuantumOperation::identity() { return single(Matrix2::Identity()); }

Matrix2 QuantumOperation::effect() const {
  Matrix2 e = Matrix2::Zero();
  for (const auto& k : kraus_) {
    e += k.adjoint() * k;
  }
  return e;
}

Eigen::Matrix4cd QuantumOperation::choi() const {
  Eigen::Matrix4cd choi = Eigen::Matrix4cd::Zero();
  for (const auto& k : kraus_) {
    Eigen::Vector4cd v;
    v << k(0, 0), k(1, 0), k(0, 1), k(1, 1);
    choi += v * v.adjoint();
  }
  return choi;
}

// ---------------------------------------------------------------------------
// Free functions

BlochVector bloch_from_density(const DensityMatrix& rho) {
  const Matrix2& m = rho.entries();
  Vector3 r(2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real());
  // PSD drift within kStateTol can push |r| up to 1 + 2 kStateTol.
  const double n = r.norm();
  if (n > 1.0) {
    r /= n;
  }
  return BlochVector(r);
}

DensityMatrix density_from_bloch(const BlochVector& r) {
  const Matrix2 m = 0.5 * (pauli::identity() + r.x() * pauli::x() + r.y() * pauli::y() +
                           r.z() * pauli::z());
  return DensityMatrix(m);
}

Matrix2 sqrt_psd(const Matrix2& m) {
  Eigen::SelfAdjointEigenSolver<Matrix2> es(hermitian_part(m));
  Eigen::Vector2d lambda = es.eigenvalues();
  for (int i = 0; i < 2; ++i) {
    if (lambda(i) < -kStateTol) {
      throw InvalidInput("matrix square root of a non-PSD matrix");
    }
    lambda(i) = std::sqrt(std::max(0.0, lambda(i)));
  }
  const Matrix2& v = es.eigenvectors();
  return v * lambda.cast<Complex>().asDiagonal() * v.adjoint();
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  Eigen::SelfAdjointEigenSolver<Matrix2> es_rho(rho.entries());
  Eigen::SelfAdjointEigenSolver<Matrix2> es_sigma(sigma.entries());

  // The square root of a vanishing eigenvalue amplifies rounding noise to
  // ~1e-8, so rank-one arguments use the exact pure-state expression.
  const auto rank_one = [](const Eigen::SelfAdjointEigenSolver<Matrix2>& es,
                           const Matrix2& other) {
    const Ket v = es.eigenvectors().col(1);
    const double expectation = (v.adjoint() * other * v)(0, 0).real();
    return std::sqrt(std::max(0.0, es.eigenvalues()(1) * expectation));
  };
  double f;
  if (es_rho.eigenvalues()(0) <= kRankOneTol) {
    f = rank_one(es_rho, sigma.entries());
  } else if (es_sigma.eigenvalues()(0) <= kRankOneTol) {
    f = rank_one(es_sigma, rho.entries());
  } else {
    const Matrix2 s = sqrt_psd(rho.entries());
    const Matrix2 inner = hermitian_part(s * sigma.entries() * s);
    Eigen::SelfAdjointEigenSolver<Matrix2> es(inner, Eigen::EigenvaluesOnly);
    f = 0.0;
    for (int i = 0; i < 2; ++i) {
      f += std::sqrt(std::max(0.0, es.eigenvalues()(i)));
    }
  }
  return std::clamp(f, 0.0, 1.0);
}

double bloch_fidelity(const BlochVector& r1, const BlochVector& r2) {
  const double purity_term = std::sqrt(std::max(0.0, (1.0 - r1.r().squaredNorm())) *
                                       std::max(0.0, (1.0 - r2.r().squaredNorm())));
  const double f2 = 0.5 * (1.0 + r1.r().dot(r2.r()) + purity_term);
  return std::clamp(std::sqrt(std::max(0.0, f2)), 0.0, 1.0);
}

double fidelity_with_pure(const PureQubit& phi, const DensityMatrix& rho) {
  const Ket& v = phi.amplitudes();
  const double expectation = (v.adjoint() * rho.entries() * v)(0, 0).real();
  return std::clamp(std::sqrt(std::max(0.0, expectation)), 0.0, 1.0);
}

double pure_overlap(const PureQubit& a, const PureQubit& b) {
  return std::min(1.0, std::abs(a.amplitudes().dot(b.amplitudes())));
}

OperationOutcome apply_operation(const QuantumOperation& op, const DensityMatrix& rho) {
  Matrix2 out = Matrix2::Zero();
  for (const auto& k : op.kraus()) {
    out += k * rho.entries() * k.adjoint();
  }
  out = hermitian_part(out);
  OperationOutcome outcome;
  outcome.output = out;
  outcome.probability = out.trace().real();
  if (outcome.probability >= kProbFloor) {
    outcome.state.emplace(Matrix2(out / outcome.probability));
  }
  return outcome;
}

double max_effect_eigenvalue(std::span<const Matrix2> kraus) {
  Matrix2 e = Matrix2::Zero();
  for (const auto& k : kraus) {
    e += k.adjoint() * k;
  }
  return max_eigenvalue_hermitian(e);
}

double spectral_norm(const Matrix2& m) {
  return std::sqrt(std::max(0.0, max_eigenvalue_hermitian(m.adjoint() * m)));
}

std::string format_matrix(const Matrix2& m) {
  std::ostringstream out;
  char buf[96];
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Complex c = m(i, j);
      std::snprintf(buf, sizeof(buf), "%.17g%+.17gj", c.real(), c.imag());
      out << (j ? " " : "") << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace qtradeoff

// Copyright 2026 The clonerev Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense states and operators for registers of one to three qubits.
//
// Basis convention: |0> is horizontal polarization |H>, |1> is vertical |V>.
// Multi-qubit amplitudes are indexed with qubit 0 as the most significant
// bit, so a three-qubit register ordered (S, A, B) has index 4s + 2a + b.

#pragma once

#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "clonerev/rng.hpp"

namespace clonerev {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr int kMaxQubits = 3;
inline constexpr double kAlgebraicTol = 1e-12;
inline constexpr double kEigenTol = 1e-10;

/// Normalized amplitude vector over the computational basis of 1..3 qubits.
class PureState {
 public:
  /// Throws std::domain_error unless the length is 2^n (n in 1..3) and the
  /// vector has unit norm within kAlgebraicTol.
  explicit PureState(Vector amplitudes);

  /// Rescales `amplitudes` to unit norm. Throws on a zero vector.
  static PureState normalized(Vector amplitudes);

  static PureState basis(int n_qubits, int index);

  int n_qubits() const { return n_qubits_; }
  int dim() const { return static_cast<int>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  Complex operator[](int i) const { return amps_(i); }

 private:
  int n_qubits_;
  Vector amps_;
};

/// Hermitian, positive semidefinite, unit-trace matrix on 1..3 qubits.
class DensityMatrix {
 public:
  /// Throws std::domain_error when the invariants fail (Hermitian and unit
  /// trace within kAlgebraicTol, smallest eigenvalue >= -kEigenTol).
  explicit DensityMatrix(Matrix entries);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }

 private:
  int n_qubits_;
  Matrix m_;
};

/// Point on (or inside) the Bloch ball.
struct BlochPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  double norm() const;
};

enum class PauliLabel { I, X, Y, Z };

/// Pauli matrix with a unit-modulus prefactor, so that i*sigma_Y is
/// representable as {Y, i}.
struct PauliOp {
  PauliLabel label = PauliLabel::I;
  Complex phase{1.0, 0.0};

  Matrix matrix() const;
  std::string name() const;

  friend bool operator==(const PauliOp&, const PauliOp&) = default;
};

Matrix pauli_matrix(PauliLabel label);

/// alpha = cos(theta/2), beta = e^{i phi} sin(theta/2). Throws
/// std::domain_error unless |p| = 1 within 1e-9.
PureState state_from_bloch(const BlochPoint& p);

/// Bloch vector (<X>, <Y>, <Z>) of a single-qubit state.
BlochPoint bloch_of(const DensityMatrix& rho);

/// Haar-uniform single-qubit pure state (uniform point on the sphere).
BlochPoint random_bloch_point(Rng& rng);

/// |phi_perp> = conj(beta)|0> - conj(alpha)|1>.
PureState orthogonal(const PureState& phi);

/// Global phase fixed so that the first nonzero amplitude is real positive.
PureState canonical_phase(const PureState& psi);

/// Kronecker product. Throws std::length_error past three qubits.
PureState tensor(const PureState& a, const PureState& b);
Matrix kron(const Matrix& a, const Matrix& b);

/// Applies a unitary and re-checks normalization.
PureState apply_unitary(const Matrix& unitary, const PureState& psi);
DensityMatrix conjugate(const Matrix& unitary, const DensityMatrix& rho);

/// Reduced state on the qubits in `keep` (ascending order of the result
/// follows ascending qubit index). Throws std::invalid_argument for an
/// empty, duplicated or out-of-range index set.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const PureState& psi, std::span<const int> keep);

/// <phi|rho|phi>, clipped to [0, 1].
double fidelity(const DensityMatrix& rho, const PureState& phi);

/// |<a|b>|^2.
double state_fidelity(const PureState& a, const PureState& b);

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Born-rule sample over a complete set of orthogonal projectors acting on
/// the full register. Returns the outcome index and the renormalized
/// post-measurement state.
std::pair<int, PureState> projective_measure(const PureState& state,
                                             std::span<const Matrix> projectors,
                                             Rng& rng);

/// Outcome probabilities for a projector set, same validation as
/// projective_measure.
std::vector<double> outcome_probabilities(const DensityMatrix& rho,
                                          std::span<const Matrix> projectors);

/// rho written in the ordered basis {|phi>, |phi_perp>}.
Matrix in_basis_of(const DensityMatrix& rho, const PureState& phi);

}  // namespace clonerev

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

#include "clonerev/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace clonerev {
namespace {

int qubits_for_dim(Eigen::Index dim) {
  for (int n = 1; n <= kMaxQubits; ++n) {
    if (dim == (Eigen::Index{1} << n)) return n;
  }
  throw std::domain_error("dimension " + std::to_string(dim) +
                          " is not 2^n for n in 1..3");
}

void check_projectors(std::span<const Matrix> projectors, Eigen::Index dim) {
  if (projectors.empty()) throw std::invalid_argument("empty projector set");
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& p : projectors) {
    if (p.rows() != dim || p.cols() != dim) {
      throw std::invalid_argument("projector dimension mismatch");
    }
    sum += p;
  }
  if ((sum - Matrix::Identity(dim, dim)).norm() > kEigenTol) {
    throw std::invalid_argument("projectors do not sum to the identity");
  }
}

}  // namespace

PureState::PureState(Vector amplitudes)
    : n_qubits_(qubits_for_dim(amplitudes.size())), amps_(std::move(amplitudes)) {
  const double norm2 = amps_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kAlgebraicTol) {
    throw std::domain_error("state is not normalized (|psi|^2 = " +
                            std::to_string(norm2) + ")");
  }
}

PureState PureState::normalized(Vector amplitudes) {
  const double n = amplitudes.norm();
  if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
  amplitudes /= n;
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(int n_qubits, int index) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::domain_error("qubit count out of range");
  }
  const int dim = 1 << n_qubits;
  if (index < 0 || index >= dim) throw std::domain_error("basis index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

DensityMatrix::DensityMatrix(Matrix entries)
    : n_qubits_(qubits_for_dim(entries.rows())), m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw std::domain_error("density matrix not square");
  if ((m_ - m_.adjoint()).norm() > kAlgebraicTol) {
    throw std::domain_error("density matrix not Hermitian");
  }
  if (std::abs(m_.trace() - Complex{1.0}) > kAlgebraicTol) {
    throw std::domain_error("density matrix trace != 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kEigenTol) {
    throw std::domain_error("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const Vector& v = psi.amplitudes();
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::domain_error("qubit count out of range");
  }
  const int dim = 1 << n_qubits;
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

double BlochPoint::norm() const { return std::sqrt(x * x + y * y + z * z); }

Matrix pauli_matrix(PauliLabel label) {
  using namespace std::complex_literals;
  Matrix m(2, 2);
  switch (label) {
    case PauliLabel::I: m << 1.0, 0.0, 0.0, 1.0; break;
    case PauliLabel::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case PauliLabel::Y: m << 0.0, -1i, 1i, 0.0; break;
    case PauliLabel::Z: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

Matrix PauliOp::matrix() const { return phase * pauli_matrix(label); }

std::string PauliOp::name() const {
  std::string prefix;
  if (phase == Complex{0.0, 1.0}) {
    prefix = "i";
  } else if (phase == Complex{-1.0, 0.0}) {
    prefix = "-";
  } else if (phase == Complex{0.0, -1.0}) {
    prefix = "-i";
  } else if (phase != Complex{1.0, 0.0}) {
    prefix = "(phase)";
  }
  switch (label) {
    case PauliLabel::I: return prefix + "I";
    case PauliLabel::X: return prefix + "X";
    case PauliLabel::Y: return prefix + "Y";
    case PauliLabel::Z: return prefix + "Z";
  }
  return prefix;
}

PureState state_from_bloch(const BlochPoint& p) {
  if (std::abs(p.norm() - 1.0) > 1e-9) {
    throw std::domain_error("Bloch point is not on the unit sphere");
  }
  const double theta = std::acos(std::clamp(p.z, -1.0, 1.0));
  const double azimuth = std::atan2(p.y, p.x);
  Vector v(2);
  v(0) = std::cos(theta / 2.0);
  v(1) = std::polar(std::sin(theta / 2.0), azimuth);
  return PureState::normalized(std::move(v));
}

BlochPoint bloch_of(const DensityMatrix& rho) {
  if (rho.n_qubits() != 1) throw std::invalid_argument("Bloch vector needs one qubit");
  const Matrix& m = rho.matrix();
  return {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(),
          (m(0, 0) - m(1, 1)).real()};
}

BlochPoint random_bloch_point(Rng& rng) {
  const double z = 2.0 * uniform01(rng) - 1.0;
  const double azimuth = 2.0 * std::numbers::pi * uniform01(rng);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(azimuth), r * std::sin(azimuth), z};
}

PureState orthogonal(const PureState& phi) {
  if (phi.n_qubits() != 1) throw std::invalid_argument("orthogonal() needs one qubit");
  Vector v(2);
  v(0) = std::conj(phi[1]);
  v(1) = -std::conj(phi[0]);
  return PureState(std::move(v));
}

PureState canonical_phase(const PureState& psi) {
  Vector v = psi.amplitudes();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > kAlgebraicTol) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      break;
    }
  }
  return PureState::normalized(std::move(v));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

PureState tensor(const PureState& a, const PureState& b) {
  if (a.n_qubits() + b.n_qubits() > kMaxQubits) {
    throw std::length_error("tensor product exceeds three qubits");
  }
  Vector v(a.dim() * b.dim());
  for (int i = 0; i < a.dim(); ++i) {
    v.segment(i * b.dim(), b.dim()) = a[i] * b.amplitudes();
  }
  return PureState::normalized(std::move(v));
}

PureState apply_unitary(const Matrix& unitary, const PureState& psi) {
  if (unitary.rows() != psi.dim() || unitary.cols() != psi.dim()) {
    throw std::invalid_argument("operator dimension mismatch");
  }
  return PureState(unitary * psi.amplitudes());
}

DensityMatrix conjugate(const Matrix& unitary, const DensityMatrix& rho) {
  if (unitary.rows() != rho.dim() || unitary.cols() != rho.dim()) {
    throw std::invalid_argument("operator dimension mismatch");
  }
  return DensityMatrix(unitary * rho.matrix() * unitary.adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int n = rho.n_qubits();
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw std::invalid_argument("partial_trace: duplicate qubit index");
  }
  if (kept.front() < 0 || kept.back() >= n) {
    throw std::invalid_argument("partial_trace: qubit index out of range");
  }

  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);
  }
  const auto bit = [n](int index, int qubit) { return (index >> (n - 1 - qubit)) & 1; };
  const auto gather = [&](int index, const std::vector<int>& qubits) {
    int out = 0;
    for (int q : qubits) out = (out << 1) | bit(index, q);
    return out;
  };

  const int k = static_cast<int>(kept.size());
  Matrix out = Matrix::Zero(1 << k, 1 << k);
  const int dim = rho.dim();
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if (gather(i, traced) != gather(j, traced)) continue;
      out(gather(i, kept), gather(j, kept)) += rho(i, j);
    }
  }
  // Summation order can leave ~1 ulp of anti-Hermitian residue.
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(std::move(out));
}

DensityMatrix partial_trace(const PureState& psi, std::span<const int> keep) {
  return partial_trace(DensityMatrix::from_pure(psi), keep);
}

double fidelity(const DensityMatrix& rho, const PureState& phi) {
  if (rho.dim() != phi.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  const Vector& v = phi.amplitudes();
  const Complex f = v.dot(rho.matrix() * v);
  return std::clamp(f.real(), 0.0, 1.0);
}

double state_fidelity(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  return std::clamp(std::norm(a.amplitudes().dot(b.amplitudes())), 0.0, 1.0);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix() - b.matrix(),
                                           Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

std::vector<double> outcome_probabilities(const DensityMatrix& rho,
                                          std::span<const Matrix> projectors) {
  check_projectors(projectors, rho.dim());
  std::vector<double> probs;
  probs.reserve(projectors.size());
  for (const auto& p : projectors) {
    probs.push_back(std::max(0.0, (p * rho.matrix()).trace().real()));
  }
  return probs;
}

std::pair<int, PureState> projective_measure(const PureState& state,
                                             std::span<const Matrix> projectors,
                                             Rng& rng) {
  check_projectors(projectors, state.dim());
  std::vector<Vector> branches;
  std::vector<double> probs;
  for (const auto& p : projectors) {
    branches.push_back(p * state.amplitudes());
    probs.push_back(branches.back().squaredNorm());
  }
  const double u = uniform01(rng);
  double acc = 0.0;
  int outcome = -1;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    acc += probs[k];
    if (probs[k] > 0.0 && u < acc) {
      outcome = static_cast<int>(k);
      break;
    }
  }
  if (outcome < 0) {
    // Rounding left u above the accumulated total: take the last outcome
    // with nonzero weight.
    for (int k = static_cast<int>(probs.size()) - 1; k >= 0; --k) {
      if (probs[k] > 0.0) {
        outcome = k;
        break;
      }
    }
  }
  return {outcome, PureState::normalized(std::move(branches[outcome]))};
}

Matrix in_basis_of(const DensityMatrix& rho, const PureState& phi) {
  if (rho.n_qubits() != 1 || phi.n_qubits() != 1) {
    throw std::invalid_argument("in_basis_of needs single-qubit arguments");
  }
  Matrix change(2, 2);
  change.col(0) = phi.amplitudes();
  change.col(1) = orthogonal(phi).amplitudes();
  return change.adjoint() * rho.matrix() * change;
}

}  // namespace clonerev

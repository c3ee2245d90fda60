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

#include "clonerev/restorer.hpp"

#include <cmath>

namespace clonerev {
namespace {

constexpr double kBranchCutoff = 1e-14;

// B-qubit vector of (Bell_k| (x) I_B applied to a three-qubit state.
Vector project_branch(const PureState& sab, BellOutcome outcome) {
  const Vector bell = bell_state(outcome).amplitudes();
  Vector b = Vector::Zero(2);
  for (int sa = 0; sa < 4; ++sa) {
    for (int k = 0; k < 2; ++k) b(k) += std::conj(bell(sa)) * sab[2 * sa + k];
  }
  return b;
}

RestoreRecord finish(const PureState& phi, BellOutcome outcome, const Vector& b_branch) {
  const PauliOp correction = correction_for(outcome);
  const PureState b = PureState::normalized(b_branch);
  // Pauli operators are self-inverse up to phase, so applying the table entry
  // to the branch state undoes it.
  const DensityMatrix corrected =
      conjugate(correction.matrix(), DensityMatrix::from_pure(b));
  return {outcome, correction, corrected, fidelity(corrected, phi)};
}

}  // namespace

std::string_view to_string(BellOutcome outcome) {
  switch (outcome) {
    case BellOutcome::PhiPlus: return "Phi+";
    case BellOutcome::PhiMinus: return "Phi-";
    case BellOutcome::PsiPlus: return "Psi+";
    case BellOutcome::PsiMinus: return "Psi-";
  }
  return "?";
}

PureState bell_state(BellOutcome outcome) {
  const double r = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(4);
  switch (outcome) {
    case BellOutcome::PhiPlus: v(0) = r; v(3) = r; break;
    case BellOutcome::PhiMinus: v(0) = r; v(3) = -r; break;
    case BellOutcome::PsiPlus: v(1) = r; v(2) = r; break;
    case BellOutcome::PsiMinus: v(1) = r; v(2) = -r; break;
  }
  return PureState::normalized(std::move(v));
}

std::array<Matrix, 4> bell_projectors_sab() {
  std::array<Matrix, 4> out;
  for (BellOutcome k : kBellOutcomes) {
    const Vector v = bell_state(k).amplitudes();
    out[static_cast<int>(k)] = kron(v * v.adjoint(), Matrix::Identity(2, 2));
  }
  return out;
}

BellDecomposition bell_decompose(const PureState& sab) {
  if (sab.n_qubits() != 3) throw std::invalid_argument("bell_decompose needs three qubits");
  BellDecomposition out;
  for (BellOutcome k : kBellOutcomes) {
    const Vector b = project_branch(sab, k);
    const double norm = b.norm();
    BellBranch& branch = out[static_cast<int>(k)];
    branch.amplitude = norm;
    if (norm > kBranchCutoff) branch.conditional = PureState::normalized(b);
  }
  return out;
}

std::array<double, 4> bell_outcome_probs(const DensityMatrix& sab) {
  if (sab.n_qubits() != 3) throw std::invalid_argument("bell_outcome_probs needs three qubits");
  const auto projectors = bell_projectors_sab();
  const auto probs = outcome_probabilities(sab, projectors);
  return {probs[0], probs[1], probs[2], probs[3]};
}

std::array<double, 4> bell_outcome_probs(const PureState& sab) {
  return bell_outcome_probs(DensityMatrix::from_pure(sab));
}

PauliOp correction_for(BellOutcome outcome) {
  switch (outcome) {
    case BellOutcome::PhiPlus: return {PauliLabel::Y, Complex{0.0, 1.0}};
    case BellOutcome::PhiMinus: return {PauliLabel::X, Complex{1.0, 0.0}};
    case BellOutcome::PsiPlus: return {PauliLabel::Z, Complex{1.0, 0.0}};
    case BellOutcome::PsiMinus: break;
  }
  throw ProtocolError("Psi- outcome on S,A: the input is not a symmetric cloner output");
}

std::optional<RestoreRecord> restore(const PureState& phi, Rng& rng, HeraldMode mode) {
  const CloneOutput out = clone_flip(phi);
  const auto projectors = bell_projectors_sab();
  const auto [index, post] = projective_measure(out.state, projectors, rng);
  const auto outcome = static_cast<BellOutcome>(index);
  if (mode == HeraldMode::PsiPlusOnly && outcome != BellOutcome::PsiPlus) {
    return std::nullopt;
  }
  return finish(phi, outcome, project_branch(post, outcome));
}

RestoreRecord restore_given(const PureState& phi, BellOutcome outcome) {
  const CloneOutput out = clone_flip(phi);
  const Vector b = project_branch(out.state, outcome);
  if (b.norm() <= kBranchCutoff) {
    throw ProtocolError(std::string("outcome ") + std::string(to_string(outcome)) +
                        " has zero probability");
  }
  return finish(phi, outcome, b);
}

}  // namespace clonerev

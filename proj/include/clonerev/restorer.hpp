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

// Restoring machine: Bell analysis of (S, A) by Alice, a classical trit to
// Bob, and a Pauli correction on B.
//
// For any cloner output,
//
//   |Sigma(phi)> = 3^{-1/2} [ |Phi+> iY|phi> + |Phi-> X|phi> + |Psi+> Z|phi> ]
//
// up to per-branch phases, so undoing the Pauli on B returns |phi>
// whichever symmetric Bell state is observed.

#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "clonerev/cloner.hpp"
#include "clonerev/qstate.hpp"
#include "clonerev/rng.hpp"

namespace clonerev {

enum class BellOutcome { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };

inline constexpr std::array kBellOutcomes{BellOutcome::PhiPlus, BellOutcome::PhiMinus,
                                          BellOutcome::PsiPlus, BellOutcome::PsiMinus};

std::string_view to_string(BellOutcome outcome);

/// Two-qubit Bell state in the S,A register.
PureState bell_state(BellOutcome outcome);

/// Projectors |Bell_k><Bell_k| (x) I_B on the three-qubit register, indexed
/// by BellOutcome.
std::array<Matrix, 4> bell_projectors_sab();

/// Raised when the protocol meets an outcome the ideal cloner never emits.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BellBranch {
  /// Norm of the (Bell_k| (x) I) |state> branch, as a non-negative real.
  Complex amplitude;
  /// Normalized B state of the branch; empty when the branch vanishes.
  std::optional<PureState> conditional;
};

using BellDecomposition = std::array<BellBranch, 4>;

/// Works on any three-qubit state; for cloner outputs the Psi- branch is
/// empty and the others carry weight 3^{-1/2}.
BellDecomposition bell_decompose(const PureState& sab);
inline BellDecomposition bell_decompose(const CloneOutput& out) {
  return bell_decompose(out.state);
}

std::array<double, 4> bell_outcome_probs(const DensityMatrix& sab);
std::array<double, 4> bell_outcome_probs(const PureState& sab);
inline std::array<double, 4> bell_outcome_probs(const CloneOutput& out) {
  return bell_outcome_probs(out.state);
}

/// Bob's feedforward: Phi+ -> iY, Phi- -> X, Psi+ -> Z. Throws ProtocolError
/// for Psi-.
PauliOp correction_for(BellOutcome outcome);

enum class HeraldMode {
  FullBell,     // all four outcomes are resolved and corrected
  PsiPlusOnly,  // only Psi+ is detected; every other run is discarded
};

struct RestoreRecord {
  BellOutcome outcome;
  PauliOp correction;
  DensityMatrix final_state;  // qubit B after correction
  double restored_fidelity;
};

/// One run of cloning followed by restoration. Returns nullopt when the run
/// is not heralded (PsiPlusOnly mode and a non-Psi+ outcome).
std::optional<RestoreRecord> restore(const PureState& phi, Rng& rng, HeraldMode mode);

/// Restoration conditioned on a given outcome, without sampling. Throws
/// ProtocolError if the outcome has zero probability.
RestoreRecord restore_given(const PureState& phi, BellOutcome outcome);

}  // namespace clonerev

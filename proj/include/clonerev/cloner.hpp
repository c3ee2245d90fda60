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

// Combined 1->2 universal cloner and 1->1 universal NOT.
//
// The input qubit S and two ancillas A, B (both |0>) are mapped to
//
//   |Sigma(phi)> = sqrt(2/3) |phi>|phi>|phi_perp>
//                - 1/sqrt(6) (|phi>|phi_perp> + |phi_perp>|phi>) |phi>
//
// with qubit order S, A, B. S and A carry the two clones, B the flipped
// copy.

#pragma once

#include "clonerev/qstate.hpp"

namespace clonerev {

inline constexpr double kCloneFidelity = 5.0 / 6.0;
inline constexpr double kAnticloneFidelity = 1.0 / 3.0;  // <phi|rho_B|phi>
inline constexpr double kFlipFidelity = 2.0 / 3.0;       // <phi_perp|rho_B|phi_perp>

inline constexpr int kQubitS = 0;
inline constexpr int kQubitA = 1;
inline constexpr int kQubitB = 2;

struct CloneOutput {
  PureState state;  // three qubits, S A B
  PureState input;  // the phi that was cloned
};

CloneOutput clone_flip(const PureState& phi);

/// Decomposition |Sigma(phi)> = alpha |Sigma0> + beta |Sigma1>, where
/// Sigma0 and Sigma1 are the images of |0> and |1>.
struct SigmaComponents {
  Complex alpha;
  Complex beta;
  PureState sigma0;
  PureState sigma1;
};

SigmaComponents sigma_components(const PureState& phi);

/// alpha * sigma0 + beta * sigma1 (not renormalized).
Vector recombine(const SigmaComponents& c);

struct ReducedStates {
  DensityMatrix rho_s;
  DensityMatrix rho_a;
  DensityMatrix rho_b;
};

ReducedStates reduced_states(const CloneOutput& out);

/// Norm of the projection of the state onto the S,A singlet subspace.
double antisymmetric_weight(const PureState& sab);

/// Swaps qubits S and A of a three-qubit state.
PureState swap_sa(const PureState& sab);

}  // namespace clonerev

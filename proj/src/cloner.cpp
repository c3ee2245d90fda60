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

#include "clonerev/cloner.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace clonerev {
namespace {

Vector outer3(const Vector& s, const Vector& a, const Vector& b) {
  Vector v(8);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) v(4 * i + 2 * j + k) = s(i) * a(j) * b(k);
  return v;
}

}  // namespace

CloneOutput clone_flip(const PureState& phi) {
  if (phi.n_qubits() != 1) throw std::invalid_argument("clone_flip needs one qubit");
  const Vector& p = phi.amplitudes();
  const Vector q = orthogonal(phi).amplitudes();
  const double c_keep = std::sqrt(2.0 / 3.0);
  const double c_mix = 1.0 / std::sqrt(6.0);
  Vector v = c_keep * outer3(p, p, q) - c_mix * (outer3(p, q, p) + outer3(q, p, p));
  return {PureState(std::move(v)), phi};
}

SigmaComponents sigma_components(const PureState& phi) {
  if (phi.n_qubits() != 1) throw std::invalid_argument("sigma_components needs one qubit");
  return {phi[0], phi[1], clone_flip(PureState::basis(1, 0)).state,
          clone_flip(PureState::basis(1, 1)).state};
}

Vector recombine(const SigmaComponents& c) {
  return c.alpha * c.sigma0.amplitudes() + c.beta * c.sigma1.amplitudes();
}

ReducedStates reduced_states(const CloneOutput& out) {
  const DensityMatrix rho = DensityMatrix::from_pure(out.state);
  const std::array keep_s{kQubitS};
  const std::array keep_a{kQubitA};
  const std::array keep_b{kQubitB};
  return {partial_trace(rho, keep_s), partial_trace(rho, keep_a),
          partial_trace(rho, keep_b)};
}

PureState swap_sa(const PureState& sab) {
  if (sab.n_qubits() != 3) throw std::invalid_argument("swap_sa needs three qubits");
  Vector v(8);
  for (int s = 0; s < 2; ++s)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) v(4 * a + 2 * s + b) = sab[4 * s + 2 * a + b];
  return PureState(std::move(v));
}

double antisymmetric_weight(const PureState& sab) {
  if (sab.n_qubits() != 3) throw std::invalid_argument("antisymmetric_weight needs three qubits");
  // (1 - SWAP_SA)/2 projects onto the singlet of S,A.
  const Vector anti = 0.5 * (sab.amplitudes() - swap_sa(sab).amplitudes());
  return anti.norm();
}

}  // namespace clonerev

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

// Generators and independent oracles shared by the unit and acceptance tests.
// Nothing here calls into the library code paths it is used to check.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "clonerev/qstate.hpp"

namespace clonerev::testing {

inline Complex gaussian_complex(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

/// Haar-random single-qubit state from a normalized complex Gaussian vector.
inline PureState haar_qubit(Rng& rng) {
  Vector v(2);
  v << gaussian_complex(rng), gaussian_complex(rng);
  return PureState::normalized(v);
}

inline PureState random_state(int n_qubits, Rng& rng) {
  Vector v(1 << n_qubits);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = gaussian_complex(rng);
  return PureState::normalized(v);
}

/// Haar unitary: QR of a Ginibre matrix with the phases of R's diagonal
/// moved into Q.
inline Matrix haar_unitary(int dim, Rng& rng) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = gaussian_complex(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

/// Random single-qubit mixed state with Bloch radius drawn uniformly in [0, 1].
inline DensityMatrix random_qubit_density(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const PureState psi = haar_qubit(rng);
  const double radius = u(rng);
  const Matrix pure = psi.amplitudes() * psi.amplitudes().adjoint();
  Matrix m = radius * pure + (1.0 - radius) * 0.5 * Matrix::Identity(2, 2);
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix(m);
}

/// |<a|b>|^2 written out by hand.
inline double overlap2(const Vector& a, const Vector& b) {
  Complex s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += std::conj(a(i)) * b(i);
  return std::norm(s);
}

/// Single-qubit reduced density matrix of a three-qubit vector, summing
/// amplitudes over the other two qubits explicitly.
inline Matrix reduce_to_qubit(const Vector& sab, int qubit) {
  Matrix out = Matrix::Zero(2, 2);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const int shift = 2 - qubit;
      const int rest_i = i & ~(1 << shift);
      const int rest_j = j & ~(1 << shift);
      if (rest_i != rest_j) continue;
      out((i >> shift) & 1, (j >> shift) & 1) += sab(i) * std::conj(sab(j));
    }
  }
  return out;
}

/// Binomial standard deviation of a frequency estimate.
inline double binomial_sigma(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

}  // namespace clonerev::testing

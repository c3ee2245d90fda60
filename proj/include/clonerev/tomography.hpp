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

// Single-qubit polarization tomography.
//
// Each analysis basis has a "plus" port (D2) and a "minus" port (D2*):
//   Z: H / V      -> S1
//   X: + / -      -> S2
//   Y: R / L      -> S3
// Counts are independent Poisson variables per port. The state is recovered
// by linear inversion of the Stokes vector followed by projection onto the
// nearest physical density matrix.

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "clonerev/qstate.hpp"
#include "clonerev/rng.hpp"

namespace clonerev {

enum class Basis { Z, X, Y };

inline constexpr std::array kTomographyBases{Basis::Z, Basis::X, Basis::Y};

std::string_view to_string(Basis basis);
Basis parse_basis(std::string_view s);

/// Eigenstate on the plus (D2) or minus (D2*) port of a basis.
PureState basis_state(Basis basis, bool plus);

struct StokesVector {
  double s0 = 1.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;

  double polarization() const;  // sqrt(s1^2 + s2^2 + s3^2)
};

struct CountRecord {
  Basis basis = Basis::Z;
  std::uint64_t n_plus = 0;
  std::uint64_t n_minus = 0;
  double duration_s = 0.0;

  friend bool operator==(const CountRecord&, const CountRecord&) = default;
};

/// Born probabilities (p_plus, p_minus) for a basis setting.
std::pair<double, double> outcome_prob(const DensityMatrix& rho, Basis basis);
/// Same for an arbitrary analyzer {|a>, |a_perp>}.
std::pair<double, double> outcome_prob(const DensityMatrix& rho, const PureState& analyzer);

CountRecord simulate_counts(const DensityMatrix& rho, Basis basis, double mean_total,
                            Rng& rng, double duration_s = 0.0);

/// Noise-free counts: round(mean_total * p) per port.
CountRecord expected_counts(const DensityMatrix& rho, Basis basis, double mean_total,
                            double duration_s = 0.0);

/// Requires exactly one record per basis, each with a positive total.
StokesVector stokes_from_counts(std::span<const CountRecord> records);

/// Exact Stokes vector of a state.
StokesVector stokes_of(const DensityMatrix& rho);

/// Linear inversion, then eigenvalue clipping and renormalization when the
/// inverted matrix is unphysical.
DensityMatrix reconstruct(const StokesVector& s);

/// Closest physical state (eigenvalues clipped at zero, trace renormalized)
/// to a Hermitian matrix.
DensityMatrix nearest_physical(const Matrix& hermitian);

struct FidelityEstimate {
  double fidelity = 0.0;
  double sigma = 0.0;
};

/// Point estimate from the records plus a parametric bootstrap: each
/// resample replaces every count by a Poisson draw with that count as mean
/// and reruns the pipeline. Resample i uses its own stream derived from
/// (seed, i), so `threads` does not change the result.
FidelityEstimate fidelity_with_error(std::span<const CountRecord> records,
                                     const PureState& phi, int bootstrap_n,
                                     std::uint64_t seed, unsigned threads = 1);

// Serialization. CSV columns: basis,n_plus,n_minus,duration_s
void write_counts_csv(std::ostream& os, std::span<const CountRecord> records);
std::vector<CountRecord> read_counts_csv(std::istream& is);

/// Matrix as rows of [re, im] pairs.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

}  // namespace clonerev

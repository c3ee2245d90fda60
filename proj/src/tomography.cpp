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

#include "clonerev/tomography.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "clonerev/parallel.hpp"

namespace clonerev {

std::string_view to_string(Basis basis) {
  switch (basis) {
    case Basis::Z: return "Z";
    case Basis::X: return "X";
    case Basis::Y: return "Y";
  }
  return "?";
}

Basis parse_basis(std::string_view s) {
  if (s == "Z") return Basis::Z;
  if (s == "X") return Basis::X;
  if (s == "Y") return Basis::Y;
  throw std::invalid_argument("unknown basis '" + std::string(s) + "'");
}

PureState basis_state(Basis basis, bool plus) {
  const double r = 1.0 / std::sqrt(2.0);
  const double sign = plus ? 1.0 : -1.0;
  Vector v(2);
  switch (basis) {
    case Basis::Z:
      return PureState::basis(1, plus ? 0 : 1);
    case Basis::X:
      v << r, sign * r;
      break;
    case Basis::Y:
      v << r, Complex{0.0, sign * r};
      break;
  }
  return PureState::normalized(std::move(v));
}

double StokesVector::polarization() const {
  return std::sqrt(s1 * s1 + s2 * s2 + s3 * s3);
}

std::pair<double, double> outcome_prob(const DensityMatrix& rho, const PureState& analyzer) {
  if (rho.n_qubits() != 1 || analyzer.n_qubits() != 1) {
    throw std::invalid_argument("outcome_prob needs a single-qubit state");
  }
  const double p = fidelity(rho, analyzer);
  return {p, 1.0 - p};
}

std::pair<double, double> outcome_prob(const DensityMatrix& rho, Basis basis) {
  return outcome_prob(rho, basis_state(basis, true));
}

CountRecord simulate_counts(const DensityMatrix& rho, Basis basis, double mean_total,
                            Rng& rng, double duration_s) {
  if (!(mean_total > 0.0)) throw std::invalid_argument("mean_total must be positive");
  const auto [p_plus, p_minus] = outcome_prob(rho, basis);
  CountRecord r{basis, 0, 0, duration_s};
  r.n_plus = sample_poisson(mean_total * p_plus, rng);
  r.n_minus = sample_poisson(mean_total * p_minus, rng);
  return r;
}

CountRecord expected_counts(const DensityMatrix& rho, Basis basis, double mean_total,
                            double duration_s) {
  if (!(mean_total > 0.0)) throw std::invalid_argument("mean_total must be positive");
  const auto [p_plus, p_minus] = outcome_prob(rho, basis);
  return {basis, static_cast<std::uint64_t>(std::llround(mean_total * p_plus)),
          static_cast<std::uint64_t>(std::llround(mean_total * p_minus)), duration_s};
}

StokesVector stokes_from_counts(std::span<const CountRecord> records) {
  std::array<const CountRecord*, 3> by_basis{};
  for (const auto& r : records) {
    auto& slot = by_basis[static_cast<int>(r.basis)];
    if (slot != nullptr) {
      throw std::invalid_argument("duplicate record for basis " + std::string(to_string(r.basis)));
    }
    slot = &r;
  }
  std::array<double, 3> s{};
  for (Basis b : kTomographyBases) {
    const CountRecord* r = by_basis[static_cast<int>(b)];
    if (r == nullptr) {
      throw std::invalid_argument("missing record for basis " + std::string(to_string(b)));
    }
    const double total = static_cast<double>(r->n_plus) + static_cast<double>(r->n_minus);
    if (total <= 0.0) {
      throw std::invalid_argument("zero total counts in basis " + std::string(to_string(b)));
    }
    s[static_cast<int>(b)] =
        (static_cast<double>(r->n_plus) - static_cast<double>(r->n_minus)) / total;
  }
  return {1.0, s[0], s[1], s[2]};
}

StokesVector stokes_of(const DensityMatrix& rho) {
  StokesVector s;
  s.s1 = (rho.matrix() * pauli_matrix(PauliLabel::Z)).trace().real();
  s.s2 = (rho.matrix() * pauli_matrix(PauliLabel::X)).trace().real();
  s.s3 = (rho.matrix() * pauli_matrix(PauliLabel::Y)).trace().real();
  return s;
}

DensityMatrix nearest_physical(const Matrix& hermitian) {
  const Matrix h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Eigen::VectorXd evals = es.eigenvalues().cwiseMax(0.0);
  const double total = evals.sum();
  if (total <= 0.0) throw std::domain_error("no physical state near a non-positive matrix");
  evals /= total;
  const Matrix& u = es.eigenvectors();
  Matrix rho = u * evals.cast<Complex>().asDiagonal() * u.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

DensityMatrix reconstruct(const StokesVector& s) {
  if (!(s.s0 > 0.0)) throw std::invalid_argument("Stokes S0 must be positive");
  Matrix m = 0.5 * (s.s0 * pauli_matrix(PauliLabel::I) + s.s1 * pauli_matrix(PauliLabel::Z) +
                    s.s2 * pauli_matrix(PauliLabel::X) + s.s3 * pauli_matrix(PauliLabel::Y));
  m /= s.s0;
  if (s.polarization() <= s.s0) {
    try {
      return DensityMatrix(m);
    } catch (const std::domain_error&) {
      // Rounding at the boundary of the Bloch ball; fall through to clipping.
    }
  }
  return nearest_physical(m);
}

FidelityEstimate fidelity_with_error(std::span<const CountRecord> records,
                                     const PureState& phi, int bootstrap_n,
                                     std::uint64_t seed, unsigned threads) {
  if (bootstrap_n < 100) throw std::invalid_argument("bootstrap_n must be at least 100");
  const std::vector<CountRecord> base(records.begin(), records.end());
  FidelityEstimate est;
  est.fidelity = fidelity(reconstruct(stokes_from_counts(base)), phi);

  std::vector<double> samples(static_cast<std::size_t>(bootstrap_n));
  parallel_for(samples.size(), threads, [&](std::size_t i) {
    Rng rng = derive_stream(seed, "bootstrap", i);
    std::vector<CountRecord> resample = base;
    for (auto& r : resample) {
      const double mean_plus = static_cast<double>(r.n_plus);
      const double mean_minus = static_cast<double>(r.n_minus);
      do {
        r.n_plus = sample_poisson(mean_plus, rng);
        r.n_minus = sample_poisson(mean_minus, rng);
      } while (r.n_plus + r.n_minus == 0);
    }
    samples[i] = fidelity(reconstruct(stokes_from_counts(resample)), phi);
  });

  double mean = 0.0;
  for (double f : samples) mean += f;
  mean /= static_cast<double>(samples.size());
  double var = 0.0;
  for (double f : samples) var += (f - mean) * (f - mean);
  est.sigma = std::sqrt(var / static_cast<double>(samples.size() - 1));
  return est;
}

namespace {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace

void write_counts_csv(std::ostream& os, std::span<const CountRecord> records) {
  os << "basis,n_plus,n_minus,duration_s\n";
  for (const auto& r : records) {
    os << to_string(r.basis) << ',' << r.n_plus << ',' << r.n_minus << ','
       << format_double(r.duration_s) << '\n';
  }
}

std::vector<CountRecord> read_counts_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("basis,n_plus,n_minus,duration_s", 0) != 0) {
    throw std::runtime_error("counts CSV: missing header");
  }
  std::vector<CountRecord> out;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string basis, n_plus, n_minus, duration;
    if (!std::getline(fields, basis, ',') || !std::getline(fields, n_plus, ',') ||
        !std::getline(fields, n_minus, ',') || !std::getline(fields, duration)) {
      throw std::runtime_error("counts CSV: malformed line " + std::to_string(line_no));
    }
    try {
      CountRecord r;
      r.basis = parse_basis(basis);
      r.n_plus = std::stoull(n_plus);
      r.n_minus = std::stoull(n_minus);
      r.duration_s = std::stod(duration);
      out.push_back(r);
    } catch (const std::exception& e) {
      throw std::runtime_error("counts CSV line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j.at(0).size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j.at(r).size()) != cols) {
      throw std::runtime_error("matrix JSON: ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& e = j.at(r).at(c);
      m(r, c) = Complex{e.at(0).get<double>(), e.at(1).get<double>()};
    }
  }
  return m;
}

}  // namespace clonerev

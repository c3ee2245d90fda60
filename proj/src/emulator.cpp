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

#include "clonerev/emulator.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "clonerev/parallel.hpp"
#include "clonerev/tomography.hpp"

namespace clonerev {
namespace {

constexpr std::uint64_t kBoundBlock = 4096;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_number(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("config: bad number for '" + key + "': '" + text + "'");
  }
  return v;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace

std::string_view to_string(InputLabel label) {
  switch (label) {
    case InputLabel::H: return "H";
    case InputLabel::Plus: return "plus";
    case InputLabel::R: return "R";
  }
  return "?";
}

InputLabel parse_input_label(std::string_view s) {
  if (s == "H") return InputLabel::H;
  if (s == "plus" || s == "+") return InputLabel::Plus;
  if (s == "R") return InputLabel::R;
  throw std::invalid_argument("unknown input state '" + std::string(s) + "'");
}

PureState input_state(InputLabel label) {
  switch (label) {
    case InputLabel::H: return state_from_bloch({0.0, 0.0, 1.0});
    case InputLabel::Plus: return state_from_bloch({1.0, 0.0, 0.0});
    case InputLabel::R: return state_from_bloch({0.0, 1.0, 0.0});
  }
  throw std::invalid_argument("unknown input label");
}

void ExperimentConfig::validate() const {
  if (!(coherence_len_um > 0.0)) throw std::invalid_argument("coherence_len_um must be > 0");
  for (const auto& [label, v] : visibility) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("visibility for " + std::string(to_string(label)) +
                                  " outside [0, 1]");
    }
  }
  if (!(mean_fourfold_rate > 0.0)) throw std::invalid_argument("mean_fourfold_rate must be > 0");
  if (!(acquisition_s > 0.0)) throw std::invalid_argument("acquisition_s must be > 0");
  if (!(background_rate >= 0.0)) throw std::invalid_argument("background_rate must be >= 0");
}

double ExperimentConfig::visibility_of(InputLabel label) const {
  const auto it = visibility.find(label);
  if (it == visibility.end()) {
    throw std::invalid_argument("no visibility for " + std::string(to_string(label)));
  }
  return it->second;
}

ExperimentConfig parse_config(std::istream& is) {
  ExperimentConfig c;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const double v = parse_number(key, trim(std::string_view(content).substr(eq + 1)));
    if (key == "z_um") c.z_um = v;
    else if (key == "coherence_len_um") c.coherence_len_um = v;
    else if (key == "visibility_H") c.visibility[InputLabel::H] = v;
    else if (key == "visibility_plus") c.visibility[InputLabel::Plus] = v;
    else if (key == "visibility_R") c.visibility[InputLabel::R] = v;
    else if (key == "mean_fourfold_rate") c.mean_fourfold_rate = v;
    else if (key == "acquisition_s") c.acquisition_s = v;
    else if (key == "background_rate") c.background_rate = v;
    else throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  return parse_config(in);
}

void write_config(std::ostream& os, const ExperimentConfig& c) {
  os << "z_um = " << format_double(c.z_um) << '\n'
     << "coherence_len_um = " << format_double(c.coherence_len_um) << '\n'
     << "visibility_H = " << format_double(c.visibility_of(InputLabel::H)) << '\n'
     << "visibility_plus = " << format_double(c.visibility_of(InputLabel::Plus)) << '\n'
     << "visibility_R = " << format_double(c.visibility_of(InputLabel::R)) << '\n'
     << "mean_fourfold_rate = " << format_double(c.mean_fourfold_rate) << '\n'
     << "acquisition_s = " << format_double(c.acquisition_s) << '\n'
     << "background_rate = " << format_double(c.background_rate) << '\n';
}

double mode_overlap(double z_um, double coherence_len_um) {
  if (!(coherence_len_um > 0.0)) throw std::invalid_argument("coherence length must be > 0");
  const double x = z_um / coherence_len_um;
  return std::exp(-0.5 * x * x);
}

DensityMatrix heralded_output_state(const PureState& phi, double v) {
  if (phi.n_qubits() != 1) throw std::invalid_argument("heralded state needs one qubit");
  if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("visibility outside [0, 1]");
  const Vector& a = phi.amplitudes();
  Matrix m = v * (a * a.adjoint()) + (1.0 - v) * 0.5 * Matrix::Identity(2, 2);
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix(std::move(m));
}

std::map<InputLabel, double> calibrate_visibilities(const std::map<InputLabel, double>& targets) {
  std::map<InputLabel, double> out;
  for (const auto& [label, f] : targets) {
    if (!(f >= 0.5 && f <= 1.0)) {
      throw std::domain_error("target fidelity for " + std::string(to_string(label)) +
                              " outside [0.5, 1]");
    }
    out[label] = 2.0 * f - 1.0;
  }
  return out;
}

std::pair<double, double> sweep_expectation(const PureState& phi, double visibility,
                                            const ExperimentConfig& config, double z_um) {
  const double v = visibility * mode_overlap(z_um, config.coherence_len_um);
  const auto [p_phi, p_perp] = outcome_prob(heralded_output_state(phi, v), phi);
  return {config.mean_fourfold_rate * p_phi + config.background_rate,
          config.mean_fourfold_rate * p_perp + config.background_rate};
}

std::vector<SweepPoint> z_sweep(const PureState& phi, double visibility,
                                const ExperimentConfig& config, std::span<const double> z_grid,
                                std::uint64_t seed, unsigned threads) {
  config.validate();
  if (z_grid.empty()) throw std::invalid_argument("z_sweep: empty grid");
  if (!(visibility >= 0.0 && visibility <= 1.0)) {
    throw std::domain_error("visibility outside [0, 1]");
  }
  std::vector<SweepPoint> points(z_grid.size());
  parallel_for(points.size(), threads, [&](std::size_t i) {
    Rng rng = derive_stream(seed, "z_sweep", i);
    const auto [mean_d2, mean_d2star] = sweep_expectation(phi, visibility, config, z_grid[i]);
    points[i] = {z_grid[i], sample_poisson(mean_d2, rng), sample_poisson(mean_d2star, rng)};
  });
  return points;
}

std::vector<SweepPoint> z_sweep(InputLabel label, const ExperimentConfig& config,
                                std::span<const double> z_grid, std::uint64_t seed,
                                unsigned threads) {
  return z_sweep(input_state(label), config.visibility_of(label), config, z_grid, seed,
                 threads);
}

std::vector<double> linear_grid(double z_min, double z_max, int steps) {
  if (steps < 2) throw std::invalid_argument("grid needs at least two steps");
  if (!(z_min < z_max)) throw std::invalid_argument("grid needs z_min < z_max");
  std::vector<double> grid(static_cast<std::size_t>(steps));
  const double h = (z_max - z_min) / (steps - 1);
  for (int i = 0; i < steps; ++i) grid[i] = z_min + h * i;
  grid.back() = z_max;
  return grid;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepPoint> points) {
  os << "z_um,counts_d2,counts_d2star\n";
  for (const auto& p : points) {
    os << format_double(p.z_um) << ',' << p.counts_d2 << ',' << p.counts_d2star << '\n';
  }
}

double measure_and_prepare_fidelity(const PureState& phi, const BlochPoint& axis, Rng& rng) {
  const PureState up = state_from_bloch(axis);
  const PureState down = orthogonal(up);
  const double p_up = state_fidelity(up, phi);
  const bool got_up = uniform01(rng) < p_up;
  return got_up ? p_up : state_fidelity(down, phi);
}

double classical_bound_mc(std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  if (trials < 10000) throw std::invalid_argument("classical_bound_mc needs at least 1e4 trials");
  const std::uint64_t blocks = (trials + kBoundBlock - 1) / kBoundBlock;
  std::vector<double> block_sums(blocks, 0.0);
  parallel_for(blocks, threads, [&](std::size_t b) {
    Rng rng = derive_stream(seed, "classical_bound", b);
    const std::uint64_t begin = b * kBoundBlock;
    const std::uint64_t end = std::min(trials, begin + kBoundBlock);
    double sum = 0.0;
    for (std::uint64_t t = begin; t < end; ++t) {
      const PureState phi = state_from_bloch(random_bloch_point(rng));
      const BlochPoint axis = random_bloch_point(rng);
      sum += measure_and_prepare_fidelity(phi, axis, rng);
    }
    block_sums[b] = sum;
  });
  double total = 0.0;
  for (double s : block_sums) total += s;
  return total / static_cast<double>(trials);
}

}  // namespace clonerev

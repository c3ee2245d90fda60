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

// Experimental emulation of the heralded restoration.
//
// The pump mirror displacement z sets the temporal overlap between the
// injected photon and the pump pulse, v(z) = exp(-z^2 / 2 l^2). The B photon
// kept on a Psi+ herald is modelled as
//
//   rho_B = v |phi><phi| + (1 - v) I/2,     F = (1 + v) / 2,
//
// where v is the product of the overlap and a per-input visibility. At large
// |z| the machines are off and the analyzer ports see equal rates.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clonerev/qstate.hpp"
#include "clonerev/rng.hpp"

namespace clonerev {

enum class InputLabel { H, Plus, R };

inline constexpr InputLabel kPaperInputs[] = {InputLabel::H, InputLabel::Plus, InputLabel::R};

std::string_view to_string(InputLabel label);
/// Accepts "H", "plus" (or "+"), "R".
InputLabel parse_input_label(std::string_view s);
PureState input_state(InputLabel label);

/// Measured process fidelities for the three injected states and their mean.
inline const std::map<InputLabel, double> kReportedFidelities{
    {InputLabel::H, 0.98}, {InputLabel::Plus, 0.78}, {InputLabel::R, 0.76}};
inline constexpr double kReportedAverageFidelity = 0.84;
inline constexpr double kReportedFidelityError = 0.01;

/// Best average fidelity of measure-and-prepare on one unknown qubit.
inline constexpr double kClassicalBound = 2.0 / 3.0;

/// c * tau / 2 for a 140 fs pump pulse, in micrometers.
inline constexpr double kDefaultCoherenceLengthUm = 299792458.0 * 140e-15 / 2.0 * 1e6;

struct ExperimentConfig {
  double z_um = 0.0;
  double coherence_len_um = kDefaultCoherenceLengthUm;
  std::map<InputLabel, double> visibility{
      {InputLabel::H, 1.0}, {InputLabel::Plus, 1.0}, {InputLabel::R, 1.0}};
  double mean_fourfold_rate = 1e5;  // heralded counts per acquisition window
  double acquisition_s = 2400.0;
  double background_rate = 0.0;     // accidentals per port per window

  /// Throws std::invalid_argument on a violated invariant.
  void validate() const;
  double visibility_of(InputLabel label) const;
};

/// Key-value text, one `key = value` per line, `#` starts a comment. Keys:
/// z_um, coherence_len_um, visibility_H, visibility_plus, visibility_R,
/// mean_fourfold_rate, acquisition_s, background_rate. Missing keys keep
/// their defaults; unknown keys are an error.
ExperimentConfig parse_config(std::istream& is);
ExperimentConfig load_config(const std::string& path);
void write_config(std::ostream& os, const ExperimentConfig& config);

struct SweepPoint {
  double z_um = 0.0;
  std::uint64_t counts_d2 = 0;
  std::uint64_t counts_d2star = 0;

  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

double mode_overlap(double z_um, double coherence_len_um);

DensityMatrix heralded_output_state(const PureState& phi, double v);

/// v = 2F - 1 per label. Throws std::domain_error for a target below 1/2.
std::map<InputLabel, double> calibrate_visibilities(const std::map<InputLabel, double>& targets);

/// Mean counts on D2 (analyzer along phi) and D2* (along phi_perp) at z.
std::pair<double, double> sweep_expectation(const PureState& phi, double visibility,
                                            const ExperimentConfig& config, double z_um);

/// Point i draws from the stream derived from (seed, "z_sweep", i).
std::vector<SweepPoint> z_sweep(const PureState& phi, double visibility,
                                const ExperimentConfig& config, std::span<const double> z_grid,
                                std::uint64_t seed, unsigned threads = 1);
std::vector<SweepPoint> z_sweep(InputLabel label, const ExperimentConfig& config,
                                std::span<const double> z_grid, std::uint64_t seed,
                                unsigned threads = 1);

/// Evenly spaced grid with `steps` points from z_min to z_max inclusive.
std::vector<double> linear_grid(double z_min, double z_max, int steps);

/// CSV columns: z_um,counts_d2,counts_d2star
void write_sweep_csv(std::ostream& os, std::span<const SweepPoint> points);

/// Fidelity of one measure-and-prepare round: measure phi along `axis`,
/// prepare the eigenstate that was found.
double measure_and_prepare_fidelity(const PureState& phi, const BlochPoint& axis, Rng& rng);

/// Monte Carlo average of measure_and_prepare_fidelity over Haar-random
/// inputs and random axes. Trials are grouped in fixed blocks with one
/// derived stream each, so the result is independent of `threads`.
double classical_bound_mc(std::uint64_t trials, std::uint64_t seed, unsigned threads = 1);

}  // namespace clonerev

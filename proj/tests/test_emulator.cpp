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

#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"

#include "clonerev/emulator.hpp"
#include "clonerev/tomography.hpp"
#include "test_util.hpp"

using namespace clonerev;
using namespace clonerev::testing;
using doctest::Approx;

TEST_CASE("input labels") {
  CHECK(parse_input_label("plus") == InputLabel::Plus);
  CHECK(parse_input_label("+") == InputLabel::Plus);
  CHECK_THROWS_AS(parse_input_label("L"), std::invalid_argument);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(input_state(InputLabel::R)[1] - Complex{0.0, r}) < 1e-15);
  CHECK(std::abs(input_state(InputLabel::Plus)[1] - Complex{r}) < 1e-15);
  CHECK(input_state(InputLabel::H)[0] == Complex{1.0});
}

TEST_CASE("default coherence length is c*tau/2 for a 140 fs pulse") {
  CHECK(kDefaultCoherenceLengthUm == Approx(20.98547206));
}

TEST_CASE("mode_overlap") {
  const double l = 21.0;
  CHECK(mode_overlap(0.0, l) == 1.0);
  CHECK(mode_overlap(10.0 * l, l) < 1e-6);
  CHECK(mode_overlap(l * std::sqrt(2.0 * std::log(2.0)), l) == Approx(0.5).epsilon(1e-12));
  double previous = 1.0;
  for (double z = 1.0; z < 200.0; z += 1.0) {
    const double v = mode_overlap(z, l);
    CHECK(v < previous);
    CHECK(v == mode_overlap(-z, l));
    previous = v;
  }
  CHECK_THROWS_AS(mode_overlap(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("heralded_output_state") {
  const PureState h = input_state(InputLabel::H);
  CHECK(fidelity(heralded_output_state(h, 1.0), h) == Approx(1.0).epsilon(1e-12));
  CHECK((heralded_output_state(h, 0.0).matrix() - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-15);
  CHECK(fidelity(heralded_output_state(h, 0.96), h) == Approx(0.98).epsilon(1e-12));
  CHECK_THROWS_AS(heralded_output_state(h, 1.1), std::domain_error);
  CHECK_THROWS_AS(heralded_output_state(h, -0.1), std::domain_error);

  Rng rng(1);
  for (int i = 0; i <= 100; ++i) {
    const double v = i / 100.0;
    const PureState phi = haar_qubit(rng);
    CHECK(std::abs(fidelity(heralded_output_state(phi, v), phi) - (1.0 + v) / 2.0) < 1e-12);
  }
}

TEST_CASE("calibrate_visibilities inverts F = (1 + v)/2") {
  const auto v = calibrate_visibilities(kReportedFidelities);
  CHECK(v.at(InputLabel::H) == Approx(0.96).epsilon(1e-12));
  CHECK(v.at(InputLabel::Plus) == Approx(0.56).epsilon(1e-12));
  CHECK(v.at(InputLabel::R) == Approx(0.52).epsilon(1e-12));
  CHECK_THROWS_AS(calibrate_visibilities({{InputLabel::H, 0.4}}), std::domain_error);
}

TEST_CASE("config file parsing") {
  std::istringstream in(
      "# mirror scan setup\n"
      "coherence_len_um = 30\n"
      "visibility_R = 0.52   # from F_R\n"
      "\n"
      "mean_fourfold_rate=500\n"
      "background_rate = 12.5\n");
  const ExperimentConfig c = parse_config(in);
  CHECK(c.coherence_len_um == 30.0);
  CHECK(c.visibility_of(InputLabel::R) == 0.52);
  CHECK(c.visibility_of(InputLabel::H) == 1.0);
  CHECK(c.mean_fourfold_rate == 500.0);
  CHECK(c.background_rate == 12.5);

  std::stringstream round;
  write_config(round, c);
  const ExperimentConfig again = parse_config(round);
  CHECK(again.coherence_len_um == c.coherence_len_um);
  CHECK(again.visibility == c.visibility);
  CHECK(again.background_rate == c.background_rate);

  std::istringstream unknown("frobnicate = 1\n");
  CHECK_THROWS_AS(parse_config(unknown), std::invalid_argument);
  std::istringstream bad_value("visibility_H = 1.5\n");
  CHECK_THROWS_AS(parse_config(bad_value), std::invalid_argument);
  std::istringstream not_number("z_um = abc\n");
  CHECK_THROWS_AS(parse_config(not_number), std::invalid_argument);
  std::istringstream zero_len("coherence_len_um = 0\n");
  CHECK_THROWS_AS(parse_config(zero_len), std::invalid_argument);
  CHECK_THROWS(load_config("/nonexistent/config.txt"));
}

TEST_CASE("sweep expectations: peak, dip and equal baselines") {
  ExperimentConfig c;
  c.visibility = calibrate_visibilities(kReportedFidelities);
  const PureState r = input_state(InputLabel::R);
  const double v_r = c.visibility_of(InputLabel::R);

  const auto [d2_0, d2s_0] = sweep_expectation(r, v_r, c, 0.0);
  CHECK(d2_0 / (d2_0 + d2s_0) == Approx(0.76).epsilon(1e-12));

  const double far = 10.0 * c.coherence_len_um;
  const auto [d2_far, d2s_far] = sweep_expectation(r, v_r, c, far);
  CHECK(d2_far == Approx(d2s_far).epsilon(1e-9));

  double previous = d2_0;
  for (double z = 1.0; z <= far; z += 1.0) {
    const auto [d2, d2s] = sweep_expectation(r, v_r, c, z);
    // Beyond ~6 l the overlap is below double resolution relative to the rate.
    if (z <= 6.0 * c.coherence_len_um) {
      CHECK(d2 < previous);
    } else {
      CHECK(d2 <= previous);
    }
    CHECK(d2 == sweep_expectation(r, v_r, c, -z).first);
    CHECK(d2s >= d2s_0);
    previous = d2;
  }

  c.background_rate = 40.0;
  const auto [b2, b2s] = sweep_expectation(r, v_r, c, far);
  CHECK(b2 == Approx(d2_far + 40.0));
  CHECK(b2s == Approx(d2s_far + 40.0));
}

TEST_CASE("z_sweep sampling") {
  ExperimentConfig c;
  c.visibility = calibrate_visibilities(kReportedFidelities);
  const auto grid = linear_grid(-5.0 * c.coherence_len_um, 5.0 * c.coherence_len_um, 41);
  CHECK(grid.size() == 41);
  CHECK(grid[20] == Approx(0.0).epsilon(1e-12));

  const auto points = z_sweep(InputLabel::R, c, grid, 42);
  REQUIRE(points.size() == grid.size());
  std::size_t argmax = 0, argmin = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].counts_d2 > points[argmax].counts_d2) argmax = i;
    if (points[i].counts_d2star < points[argmin].counts_d2star) argmin = i;
  }
  CHECK(argmax == 20);
  CHECK(argmin == 20);

  SUBCASE("deterministic and independent of thread count") {
    CHECK(z_sweep(InputLabel::R, c, grid, 42, 1) == points);
    CHECK(z_sweep(InputLabel::R, c, grid, 42, 4) == points);
    CHECK(z_sweep(InputLabel::R, c, grid, 43) != points);
  }
  SUBCASE("symmetry in z within Poisson error") {
    for (std::size_t i = 0; i < 20; ++i) {
      const auto& a = points[i];
      const auto& b = points[40 - i];
      const double sigma = std::sqrt(static_cast<double>(a.counts_d2 + b.counts_d2));
      CHECK(std::abs(static_cast<double>(a.counts_d2) - static_cast<double>(b.counts_d2)) < 5.0 * sigma);
    }
  }
  SUBCASE("turned-off limit gives statistically equal rows") {
    const std::vector<double> far{-10.0 * c.coherence_len_um, 10.0 * c.coherence_len_um};
    for (const auto& p : z_sweep(InputLabel::H, c, far, 7)) {
      const double sigma = std::sqrt(static_cast<double>(p.counts_d2 + p.counts_d2star));
      CHECK(std::abs(static_cast<double>(p.counts_d2) - static_cast<double>(p.counts_d2star)) < 5.0 * sigma);
    }
  }
  CHECK_THROWS_AS(z_sweep(InputLabel::R, c, std::vector<double>{}, 1), std::invalid_argument);
  CHECK_THROWS_AS(linear_grid(1.0, 0.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 1), std::invalid_argument);

  std::ostringstream csv;
  write_sweep_csv(csv, std::vector<SweepPoint>{{-1.5, 10, 20}});
  CHECK(csv.str() == "z_um,counts_d2,counts_d2star\n-1.5,10,20\n");
}

TEST_CASE("calibrated heralded states through tomography recover the targets") {
  ExperimentConfig c;
  c.visibility = calibrate_visibilities(kReportedFidelities);
  for (InputLabel label : kPaperInputs) {
    const PureState phi = input_state(label);
    const DensityMatrix rho = heralded_output_state(phi, c.visibility_of(label));
    std::vector<CountRecord> recs;
    Rng rng = derive_stream(5, std::string("e2e/") + std::string(to_string(label)));
    for (Basis b : kTomographyBases) recs.push_back(simulate_counts(rho, b, 1e4, rng));
    const FidelityEstimate e = fidelity_with_error(recs, phi, 200, 11);
    CHECK(std::abs(e.fidelity - kReportedFidelities.at(label)) < 2.0 * e.sigma + 1e-3);
  }
}

TEST_CASE("measure-and-prepare bound") {
  Rng rng(3);
  SUBCASE("aligned input gives fidelity 1") {
    const BlochPoint axis{0.0, 0.6, 0.8};
    const PureState phi = state_from_bloch(axis);
    for (int t = 0; t < 100; ++t) {
      CHECK(measure_and_prepare_fidelity(phi, axis, rng) == Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("1e4 trials within 0.02, 1e6 within 0.002") {
    CHECK(std::abs(classical_bound_mc(10000, 1) - 2.0 / 3.0) < 0.02);
    const double big = classical_bound_mc(1000000, 2);
    CHECK(std::abs(big - 2.0 / 3.0) < 0.002);
    for (const auto& [label, f] : kReportedFidelities) CHECK(big < f);
  }
  SUBCASE("reproducible and thread-independent") {
    CHECK(classical_bound_mc(50000, 9, 1) == classical_bound_mc(50000, 9, 3));
  }
  CHECK_THROWS_AS(classical_bound_mc(100, 1), std::invalid_argument);
}

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

#include "clonerev/cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "clonerev/cloner.hpp"
#include "clonerev/emulator.hpp"
#include "clonerev/restorer.hpp"
#include "clonerev/tomography.hpp"

namespace clonerev::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct GlobalOptions {
  std::uint64_t seed = 20050101;
  std::string config_path;
  std::string out_dir = ".";
  unsigned threads = 1;
};

struct InvariantFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return v;
}

class OutputSet {
 public:
  OutputSet(const GlobalOptions& g, std::string command)
      : dir_(g.out_dir), manifest_{std::move(command), g.seed, std::nullopt, {}, std::string(kVersion)} {
    if (!g.config_path.empty()) manifest_.config_path = g.config_path;
    fs::create_directories(dir_);
  }

  std::ofstream open(const std::string& name) {
    std::ofstream f(dir_ / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir_ / name).string());
    manifest_.outputs.push_back(name);
    return f;
  }

  void write_json(const std::string& name, const json& j) {
    auto f = open(name);
    f << j.dump(2) << '\n';
  }

  void finish(const json& parameters) {
    json m;
    m["command"] = manifest_.command;
    m["master_seed"] = manifest_.master_seed;
    m["config_path"] = manifest_.config_path ? json(*manifest_.config_path) : json(nullptr);
    m["parameters"] = parameters;
    m["outputs"] = manifest_.outputs;
    m["versions"] = manifest_.version;
    const std::string name = "manifest_" + manifest_.command + ".json";
    std::ofstream f(dir_ / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir_ / name).string());
    f << m.dump(2) << '\n';
  }

 private:
  fs::path dir_;
  RunManifest manifest_;
};

json complex_pair(Complex c) { return json::array({c.real(), c.imag()}); }

// ---- ideal ----------------------------------------------------------------

int cmd_ideal(const GlobalOptions& g, const std::string& spec, std::ostream& out) {
  const PureState phi = parse_state_spec(spec);
  const PureState phi_perp = orthogonal(phi);
  const CloneOutput clone = clone_flip(phi);
  const ReducedStates reduced = reduced_states(clone);
  const double f_s = fidelity(reduced.rho_s, phi);
  const double f_a = fidelity(reduced.rho_a, phi);
  const double f_flip = fidelity(reduced.rho_b, phi_perp);
  const auto probs = bell_outcome_probs(clone);

  std::array<double, 3> restored{};
  for (int k = 0; k < 3; ++k) {
    restored[k] = restore_given(phi, static_cast<BellOutcome>(k)).restored_fidelity;
  }
  Rng rng = derive_stream(g.seed, "ideal");
  const auto sampled = restore(phi, rng, HeraldMode::FullBell);

  bool ok = std::abs(f_s - kCloneFidelity) < kAlgebraicTol &&
            std::abs(f_a - kCloneFidelity) < kAlgebraicTol &&
            std::abs(f_flip - kFlipFidelity) < kAlgebraicTol &&
            std::abs(probs[3]) < kAlgebraicTol && sampled.has_value();
  for (int k = 0; k < 3; ++k) {
    ok = ok && std::abs(probs[k] - 1.0 / 3.0) < kAlgebraicTol &&
         std::abs(restored[k] - 1.0) < kAlgebraicTol;
  }
  ok = ok && std::abs(sampled->restored_fidelity - 1.0) < kAlgebraicTol;

  out << "input state          : " << spec << "  (alpha = " << fixed(phi[0].real()) << "+"
      << fixed(phi[0].imag()) << "i, beta = " << fixed(phi[1].real()) << "+"
      << fixed(phi[1].imag()) << "i)\n";
  out << "clone fidelity S     : " << fixed(f_s) << '\n';
  out << "clone fidelity A     : " << fixed(f_a) << '\n';
  out << "flip fidelity B      : " << fixed(f_flip) << '\n';
  out << "Bell probabilities   : Phi+ " << fixed(probs[0]) << ", Phi- " << fixed(probs[1])
      << ", Psi+ " << fixed(probs[2]) << ", Psi- " << fixed(probs[3]) << '\n';
  for (int k = 0; k < 3; ++k) {
    const auto outcome = static_cast<BellOutcome>(k);
    out << "restored F | " << to_string(outcome) << "    : " << fixed(restored[k])
        << "  (correction " << correction_for(outcome).name() << ")\n";
  }
  out << "sampled run          : outcome " << to_string(sampled->outcome) << ", restored F = "
      << fixed(sampled->restored_fidelity) << '\n';
  out << "invariants           : " << (ok ? "PASS" : "FAIL") << '\n';

  OutputSet outputs(g, "ideal");
  json report;
  report["state"] = spec;
  report["input"] = json::array({complex_pair(phi[0]), complex_pair(phi[1])});
  report["clone_fidelity_s"] = f_s;
  report["clone_fidelity_a"] = f_a;
  report["flip_fidelity_b"] = f_flip;
  report["bell_probabilities"] = {{"Phi+", probs[0]}, {"Phi-", probs[1]},
                                  {"Psi+", probs[2]}, {"Psi-", probs[3]}};
  report["restored_fidelity"] = {{"Phi+", restored[0]}, {"Phi-", restored[1]},
                                 {"Psi+", restored[2]}};
  report["sampled_outcome"] = std::string(to_string(sampled->outcome));
  report["sampled_restored_fidelity"] = sampled->restored_fidelity;
  report["invariants_ok"] = ok;
  outputs.write_json("ideal_report.json", report);
  outputs.finish({{"state", spec}});
  if (!ok) throw InvariantFailure("ideal pipeline invariants violated");
  return kOk;
}

// ---- sweep ----------------------------------------------------------------

ExperimentConfig config_or_calibrated(const GlobalOptions& g) {
  if (!g.config_path.empty()) return load_config(g.config_path);
  ExperimentConfig c;
  c.visibility = calibrate_visibilities(kReportedFidelities);
  return c;
}

int cmd_sweep(const GlobalOptions& g, const std::string& state, double z_min, double z_max,
              int steps, std::ostream& out) {
  const InputLabel label = parse_input_label(state);
  const ExperimentConfig config = config_or_calibrated(g);
  const auto grid = linear_grid(z_min, z_max, steps);
  const auto points = z_sweep(label, config, grid, g.seed, g.threads);

  OutputSet outputs(g, "sweep");
  {
    auto f = outputs.open("sweep.csv");
    write_sweep_csv(f, points);
  }
  const auto peak = std::max_element(points.begin(), points.end(),
                                     [](const auto& a, const auto& b) { return a.counts_d2 < b.counts_d2; });
  const auto dip = std::min_element(points.begin(), points.end(), [](const auto& a, const auto& b) {
    return a.counts_d2star < b.counts_d2star;
  });
  out << "state " << to_string(label) << ", visibility " << fixed(config.visibility_of(label), 4)
      << ", coherence length " << fixed(config.coherence_len_um, 3) << " um\n";
  out << "D2  peak at z = " << fixed(peak->z_um, 3) << " um (" << peak->counts_d2 << " counts)\n";
  out << "D2* dip  at z = " << fixed(dip->z_um, 3) << " um (" << dip->counts_d2star << " counts)\n";
  out << "wrote " << points.size() << " points to sweep.csv\n";
  outputs.finish({{"state", std::string(to_string(label))},
                  {"z_min", z_min},
                  {"z_max", z_max},
                  {"steps", steps}});
  return kOk;
}

// ---- tomo -----------------------------------------------------------------

std::map<InputLabel, double> parse_targets(const std::string& text) {
  std::map<InputLabel, double> targets = kReportedFidelities;
  if (text.empty()) return targets;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad target '" + item + "'");
    targets[parse_input_label(item.substr(0, eq))] = parse_double(item.substr(eq + 1));
  }
  return targets;
}

int cmd_tomo(const GlobalOptions& g, const std::string& state, double counts_per_basis,
             int bootstrap_n, const std::string& targets_text, std::optional<double> forced_v,
             bool exact, std::ostream& out) {
  if (counts_per_basis < 100) throw std::invalid_argument("--counts-per-basis must be >= 100");
  std::vector<InputLabel> labels;
  if (state == "all") {
    labels.assign(std::begin(kPaperInputs), std::end(kPaperInputs));
  } else {
    labels.push_back(parse_input_label(state));
  }
  ExperimentConfig config;
  if (!g.config_path.empty()) {
    config = load_config(g.config_path);
  } else {
    config.visibility = calibrate_visibilities(parse_targets(targets_text));
  }

  OutputSet outputs(g, "tomo");
  double sum_f = 0.0;
  bool ok = true;
  for (InputLabel label : labels) {
    const PureState phi = input_state(label);
    const double v0 = forced_v ? *forced_v : config.visibility_of(label);
    const double v = v0 * mode_overlap(config.z_um, config.coherence_len_um);
    const DensityMatrix rho_true = heralded_output_state(phi, v);
    const std::string name(to_string(label));

    std::vector<CountRecord> records;
    for (Basis b : kTomographyBases) {
      if (exact) {
        records.push_back(expected_counts(rho_true, b, counts_per_basis, config.acquisition_s));
      } else {
        Rng rng = derive_stream(g.seed, "tomo/" + name, static_cast<std::uint64_t>(b));
        records.push_back(simulate_counts(rho_true, b, counts_per_basis, rng, config.acquisition_s));
      }
    }
    const StokesVector s = stokes_from_counts(records);
    const DensityMatrix rho = reconstruct(s);
    const FidelityEstimate est =
        fidelity_with_error(records, phi, bootstrap_n, derive_seed(g.seed, "bootstrap/" + name), g.threads);
    sum_f += est.fidelity;
    ok = ok && std::abs(rho.matrix().trace().real() - 1.0) < kAlgebraicTol;

    {
      auto f = outputs.open("counts_" + name + ".csv");
      write_counts_csv(f, records);
    }
    json j;
    j["state"] = name;
    j["visibility"] = v;
    j["true_fidelity"] = fidelity(rho_true, phi);
    j["stokes"] = {s.s0, s.s1, s.s2, s.s3};
    j["rho_phi_basis"] = matrix_to_json(in_basis_of(rho, phi));
    j["rho_hv_basis"] = matrix_to_json(rho.matrix());
    j["fidelity"] = est.fidelity;
    j["sigma_fidelity"] = est.sigma;
    outputs.write_json("tomo_" + name + ".json", j);

    const Matrix rp = in_basis_of(rho, phi);
    out << "state " << name << "  v = " << fixed(v, 4) << "  F = " << fixed(est.fidelity, 4)
        << " +/- " << fixed(est.sigma, 4) << '\n';
    out << "  rho in {phi, phi_perp}: [[" << fixed(rp(0, 0).real(), 4) << ", "
        << fixed(rp(0, 1).real(), 4) << (rp(0, 1).imag() < 0 ? "" : "+") << fixed(rp(0, 1).imag(), 4)
        << "i], [" << fixed(rp(1, 0).real(), 4) << (rp(1, 0).imag() < 0 ? "" : "+")
        << fixed(rp(1, 0).imag(), 4) << "i, " << fixed(rp(1, 1).real(), 4) << "]]\n";
  }
  if (labels.size() > 1) {
    const double mean = sum_f / static_cast<double>(labels.size());
    out << "average F = " << fixed(mean, 4) << "  (classical bound " << fixed(kClassicalBound, 4)
        << ")\n";
  }
  outputs.finish({{"state", state},
                  {"counts_per_basis", counts_per_basis},
                  {"bootstrap", bootstrap_n},
                  {"targets", targets_text},
                  {"visibility", forced_v ? json(*forced_v) : json(nullptr)},
                  {"exact", exact}});
  if (!ok) throw InvariantFailure("reconstructed state is not physical");
  return kOk;
}

// ---- bound ----------------------------------------------------------------

int cmd_bound(const GlobalOptions& g, std::uint64_t trials, std::ostream& out) {
  const double estimate = classical_bound_mc(trials, g.seed, g.threads);
  const bool separated = estimate < kReportedAverageFidelity;
  out << "measure-and-prepare fidelity (MC, " << trials << " trials): " << fixed(estimate) << '\n';
  out << "exact bound                                   : " << fixed(kClassicalBound) << '\n';
  out << "quantum average " << fixed(kReportedAverageFidelity, 2)
      << " vs bound -> separation: " << (separated ? "PASS" : "FAIL") << '\n';

  OutputSet outputs(g, "bound");
  outputs.write_json("bound.json", {{"trials", trials},
                                    {"estimate", estimate},
                                    {"exact", kClassicalBound},
                                    {"quantum_average", kReportedAverageFidelity},
                                    {"separation", separated}});
  outputs.finish({{"trials", trials}});
  if (!separated) throw InvariantFailure("classical bound not below the quantum average");
  return kOk;
}

}  // namespace

PureState parse_state_spec(std::string_view spec) {
  if (spec == "H" || spec == "plus" || spec == "+" || spec == "R") {
    return input_state(parse_input_label(spec));
  }
  constexpr std::string_view prefix = "bloch:";
  if (spec.substr(0, prefix.size()) == prefix) {
    const std::string_view rest = spec.substr(prefix.size());
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) {
      throw std::invalid_argument("bloch spec needs THETA,PHI");
    }
    const double theta = parse_double(rest.substr(0, comma));
    const double azimuth = parse_double(rest.substr(comma + 1));
    return state_from_bloch({std::sin(theta) * std::cos(azimuth),
                             std::sin(theta) * std::sin(azimuth), std::cos(theta)});
  }
  throw std::invalid_argument("unknown state spec '" + std::string(spec) +
                              "' (expected H, plus, R or bloch:THETA,PHI)");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cloning-flipping machine and its LOCC reversion: simulator and emulator"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Master RNG seed")->capture_default_str();
  app.add_option("--config", g.config_path, "Experiment config file (key = value)");
  app.add_option("--out-dir", g.out_dir, "Directory for data files and manifest")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();

  auto* ideal = app.add_subcommand("ideal", "Noise-free cloning + restoration check");
  std::string ideal_state = "H";
  ideal->add_option("--state", ideal_state, "H, plus, R or bloch:THETA,PHI")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Coincidence counts versus pump-mirror position");
  std::string sweep_state = "R";
  double z_min = -5.0 * kDefaultCoherenceLengthUm;
  double z_max = 5.0 * kDefaultCoherenceLengthUm;
  int steps = 41;
  sweep->add_option("--state", sweep_state, "H, plus or R")->capture_default_str();
  sweep->add_option("--z-min", z_min, "First mirror position (um)")->capture_default_str();
  sweep->add_option("--z-max", z_max, "Last mirror position (um)")->capture_default_str();
  sweep->add_option("--steps", steps, "Number of grid points (>= 2)")->capture_default_str();

  auto* tomo = app.add_subcommand("tomo", "Tomography of the restored qubit at z = 0");
  std::string tomo_state = "all";
  double counts_per_basis = 10000;
  int bootstrap_n = 200;
  std::string targets;
  std::optional<double> forced_v;
  bool exact = false;
  tomo->add_option("--state", tomo_state, "H, plus, R or all")->capture_default_str();
  tomo->add_option("--counts-per-basis", counts_per_basis, "Mean heralded counts per basis")
      ->capture_default_str();
  tomo->add_option("--bootstrap", bootstrap_n, "Bootstrap resamples for the error bar")
      ->capture_default_str();
  tomo->add_option("--targets", targets, "Fidelity targets, e.g. H=0.98,plus=0.78,R=0.76");
  tomo->add_option("--visibility", forced_v, "Override the visibility of every state");
  tomo->add_flag("--exact", exact, "Use noise-free expected counts");

  auto* bound = app.add_subcommand("bound", "Monte Carlo measure-and-prepare bound");
  std::uint64_t trials = 1000000;
  bound->add_option("--trials", trials, "Number of trials (>= 1e4)")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*ideal) return cmd_ideal(g, ideal_state, out);
    if (*sweep) return cmd_sweep(g, sweep_state, z_min, z_max, steps, out);
    if (*tomo) {
      return cmd_tomo(g, tomo_state, counts_per_basis, bootstrap_n, targets, forced_v, exact, out);
    }
    if (*bound) {
      if (trials < 10000) throw std::invalid_argument("--trials must be >= 10000");
      return cmd_bound(g, trials, out);
    }
  } catch (const InvariantFailure& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace clonerev::cli

// Copyright 2026 The Holonomic Gates Authors
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

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "holo/core.hpp"
#include "holo/layout.hpp"
#include "holo/propagate.hpp"

namespace holo {

inline constexpr std::uint64_t kDefaultSeed = 20240607;

/// Per-input Bhattacharyya overlap squared, averaged over the two logical
/// inputs: 1/2 sum_k (sum_j sqrt(p_theo[k][j] p_exp[k][j]))^2. Each row is
/// first renormalized over the two logical outcomes. Throws
/// std::domain_error for negative entries or an all-zero row.
double average_fidelity(const ProbabilityTable& theory, const ProbabilityTable& experiment);

struct CountTable {
  /// counts[input k][output j] for logical outputs
  std::array<std::array<std::uint64_t, 2>, 2> counts{};
  std::array<std::uint64_t, 2> central_counts{};
  std::array<std::uint64_t, 2> total_launched{};

  /// counts / total_launched per input (not renormalized).
  ProbabilityTable frequencies() const;
};

struct NoiseModel {
  std::uint64_t shots_per_input = 10000;
  /// Relative spread of the per-port outcoupling efficiencies.
  double outcoupling_variation = 0.01;
  std::uint64_t rng_seed = kDefaultSeed;
};

/**
 * Photon counts for both logical inputs.
 *
 * Each input draws a multinomial over (L, C, R) with shots_per_input photons.
 * One efficiency per output port, eta = 1 + variation * N(0, 1) rescaled so
 * the best port is 1, is drawn per run and applied by binomial thinning.
 * Deterministic for a fixed seed.
 */
CountTable simulate_counts(const Unitary3& u, const NoiseModel& noise);

/// sqrt(n) + 0.01 * total: Poisson deviation plus 1% of the counts for
/// outcoupling variations.
double count_uncertainty(double n, double total);

struct Leakage {
  double from_0;  ///< |U(C, L)|^2
  double from_1;  ///< |U(C, R)|^2
};

Leakage leakage(const Unitary3& u);

// ---------------------------------------------------------------------------
// Robustness
// ---------------------------------------------------------------------------

/// Independent constant multipliers 1 + sigma N(0,1) on kappa_L and kappa_R.
struct WeightJitter {
  double sigma = 0.0;
};

/// Common multiplier 1 + sigma xi(z) on Omega with xi a unit Gaussian
/// process of exponential correlation (0 = independent per sample).
struct EnvelopeJitter {
  double sigma = 0.0;
  double correlation_length_cm = 0.0;
  /// Rescale each draw back onto the unperturbed integral.
  bool preserve_integral = false;
};

/// Multipliers on the coupling-law parameters (a, b), applied to the
/// profile re-derived from the nominal layout.
struct WavelengthShift {
  double a_scale_sigma = 0.0;
  double b_scale_sigma = 0.0;
  /// Offsets added to the scale factors before the random part.
  double a_scale_offset = 0.0;
  double b_scale_offset = 0.0;
  /// Adjust the a scale per trial so the envelope integral is unchanged.
  bool preserve_integral = false;
  CouplingFit nominal_fit{20.0, 0.2, 0.0};
  LayoutOptions layout{};
};

using PerturbationKind = std::variant<WeightJitter, EnvelopeJitter, WavelengthShift>;

std::string perturbation_name(const PerturbationKind& kind);

struct PerturbationModel {
  PerturbationKind kind = WeightJitter{};
  std::size_t trials = 100;
  std::uint64_t rng_seed = kDefaultSeed;
};

struct TrialRecord {
  std::size_t trial = 0;
  double fidelity = 0.0;
  Leakage leakage{};
  /// Named values drawn for this trial.
  std::map<std::string, double> draw;
};

struct SweepStatistics {
  double mean_fidelity = 0.0;
  double std_fidelity = 0.0;
  double min_fidelity = 0.0;
  double max_fidelity = 0.0;
  double mean_leakage_from_0 = 0.0;
  double mean_leakage_from_1 = 0.0;
  std::vector<TrialRecord> records;
};

struct SweepOptions {
  PropagationConfig propagation{};
  /// Worker threads; 0 uses the hardware concurrency.
  unsigned threads = 0;
};

/// Perturbed coupling profile for one trial (exposed for testing).
CouplingProfile perturb_profile(const GateSpec& gate, const EnvelopeProfile& envelope,
                                const PerturbationKind& kind, std::uint64_t seed,
                                std::size_t trial, std::map<std::string, double>* draw = nullptr);

/// Propagates every perturbed trial and scores |U|^2 against the ideal gate
/// table with average_fidelity. Each trial seeds its own generator from
/// (seed, trial), so results do not depend on thread count or order.
SweepStatistics robustness_sweep(const GateSpec& gate, const EnvelopeProfile& envelope,
                                 const PerturbationModel& model, const SweepOptions& options = {});

/// JSON with a "summary" block and per-trial "trials" records.
std::string export_sweep_json(const SweepStatistics& stats);

}  // namespace holo

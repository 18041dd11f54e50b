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

#include <iosfwd>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "holo/analysis.hpp"
#include "holo/core.hpp"
#include "holo/envelopes.hpp"
#include "holo/layout.hpp"
#include "holo/propagate.hpp"

namespace holo {

struct GateElement {
  GateSpec gate;
  EnvelopeShape shape;
};

/// Decoupled straight waveguides: zero coupling over the given length.
struct InertElement {
  double length_cm;
};

using SequenceElement = std::variant<GateElement, InertElement>;

inline constexpr double kDefaultGapCm = 0.5;
inline constexpr double kDefaultGapSamplesPerCm = 100.0;

/**
 * Ordered gates and inert sections, separated by zero-coupling gaps.
 *
 * The first listed element is the first one the light passes, so it acts
 * first on the state. Construction throws std::invalid_argument for an empty
 * list and std::domain_error for a gate whose envelope is not cyclic, a
 * non-positive inert length or a negative gap.
 */
class GateSequence {
 public:
  explicit GateSequence(std::vector<SequenceElement> elements, double gap_cm = kDefaultGapCm,
                        double gap_samples_per_cm = kDefaultGapSamplesPerCm);

  const std::vector<SequenceElement>& elements() const { return elements_; }
  double gap_cm() const { return gap_cm_; }
  double gap_samples_per_cm() const { return gap_samples_per_cm_; }
  std::size_t size() const { return elements_.size(); }

  /// Built envelope of element i; throws std::domain_error for inert ones.
  const EnvelopeProfile& envelope(std::size_t i) const;

 private:
  std::vector<SequenceElement> elements_;
  std::vector<std::optional<EnvelopeProfile>> envelopes_;
  double gap_cm_;
  double gap_samples_per_cm_;
};

/// U_n ... U_2 U_1 from the analytic holonomies; inert elements are identity.
Holonomy2 compose_analytic(const GateSequence& seq);

struct SequenceProfile {
  CouplingProfile profile;
  /// gate, fanning (gaps) or decoupled (inert elements), one per grid point.
  std::vector<Segment> segments;
  /// [begin, end] in cm of each element.
  std::vector<std::pair<double, double>> element_spans;
};

/**
 * Concatenated couplings: gap, element, gap, ..., element, gap.
 *
 * Adjacent pieces share their boundary point when the couplings agree there;
 * otherwise the next piece starts 1e-9 cm later so the grid stays strictly
 * increasing.
 */
SequenceProfile build_labeled_sequence_profile(const GateSequence& seq);
CouplingProfile build_sequence_profile(const GateSequence& seq);

struct ExperimentConfig {
  double gate_length_cm = 2.0;
  double samples_per_cm = kDefaultSamplesPerCm;
  double gap_cm = kDefaultGapCm;
  PropagationConfig propagation{};
};

/// Sandwich-shaped gate of the configured length.
GateElement default_gate_element(const GateSpec& gate, const ExperimentConfig& config);

struct CommutatorResult {
  /// Propagated logical tables p[input][output].
  ProbabilityTable hxh;
  ProbabilityTable xhh;
  double max_difference;
};

/// Propagates H-X-H and X-H-H (listed in propagation order).
CommutatorResult commutator_experiment(const ExperimentConfig& config = {});

struct PennyResult {
  /// P(|0>) at the output for the heads input.
  double q_win_probability;
  /// Logical amplitudes for the heads input, renormalized over (L, R).
  QubitState final_state;
  Unitary3 unitary;
};

/// Q plays H, P plays X or an inert section of the same length, Q plays H.
PennyResult penny_flipover(bool p_flips, const ExperimentConfig& config = {});

/// Win probability for Q read off simulated counts of the heads input.
double simulated_q_win(const Unitary3& u, const NoiseModel& noise);

/**
 * Reads a sequence definition.
 *
 * Either a bare array of records or an object {"elements": [...], "gap_cm",
 * "samples_per_cm"}. Records are {"type": "gate", "theta", "phi",
 * "envelope", "length", "ramp", "flat", "width"} or {"type": "inert",
 * "length"}. Gate defaults: phi 0, sandwich envelope, length 2 cm. Angles
 * are read in degrees when `degrees` is set. Throws std::invalid_argument for
 * malformed or empty input.
 */
GateSequence parse_sequence_json(std::istream& in, double samples_per_cm = kDefaultSamplesPerCm,
                                 bool degrees = false);

}  // namespace holo

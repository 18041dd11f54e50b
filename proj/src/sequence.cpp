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

#include "holo/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <istream>

#include "holo/holonomy.hpp"
#include "json.hpp"

namespace holo {

namespace {

constexpr double kJoinOffsetCm = 1e-9;

std::size_t gap_cells(double length, double samples_per_cm) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(length * samples_per_cm)));
}

}  // namespace

GateSequence::GateSequence(std::vector<SequenceElement> elements, double gap_cm,
                           double gap_samples_per_cm)
    : elements_(std::move(elements)), gap_cm_(gap_cm), gap_samples_per_cm_(gap_samples_per_cm) {
  if (elements_.empty()) throw std::invalid_argument("GateSequence: no elements");
  if (!(gap_cm_ >= 0.0) || !std::isfinite(gap_cm_)) {
    throw std::domain_error("GateSequence: gap length must be finite and non-negative");
  }
  if (!(gap_samples_per_cm_ > 0.0)) {
    throw std::domain_error("GateSequence: gap sample density must be positive");
  }
  envelopes_.reserve(elements_.size());
  for (const auto& e : elements_) {
    if (const auto* g = std::get_if<GateElement>(&e)) {
      EnvelopeProfile env = build_envelope(g->shape);
      if (!env.is_cyclic()) {
        throw std::domain_error("GateSequence: gate envelope is not cyclic");
      }
      envelopes_.emplace_back(std::move(env));
    } else {
      const double length = std::get<InertElement>(e).length_cm;
      if (!(length > 0.0) || !std::isfinite(length)) {
        throw std::domain_error("GateSequence: inert length must be positive");
      }
      envelopes_.emplace_back(std::nullopt);
    }
  }
}

const EnvelopeProfile& GateSequence::envelope(std::size_t i) const {
  const auto& env = envelopes_.at(i);
  if (!env) throw std::domain_error("GateSequence: element is inert");
  return *env;
}

Holonomy2 compose_analytic(const GateSequence& seq) {
  Holonomy2 total = Holonomy2::identity();
  for (const auto& e : seq.elements()) {
    if (const auto* g = std::get_if<GateElement>(&e)) {
      total = analytic_holonomy(g->gate).after(total);
    }
  }
  return total;
}

SequenceProfile build_labeled_sequence_profile(const GateSequence& seq) {
  std::vector<double> z;
  std::vector<Complex> kl;
  std::vector<Complex> kr;
  std::vector<Segment> segments;
  std::vector<std::pair<double, double>> spans;

  // Appends a piece whose local grid starts at 0; returns its global span.
  auto append = [&](const CouplingProfile& piece, Segment label) {
    const auto& pz = piece.z_grid();
    std::size_t first = 0;
    double offset = -pz.front();
    if (!z.empty()) {
      const bool same = kl.back() == piece.kappa_left().front() &&
                        kr.back() == piece.kappa_right().front();
      if (same) {
        first = 1;
        offset += z.back();
      } else {
        offset += z.back() + kJoinOffsetCm;
      }
    }
    for (std::size_t i = first; i < piece.size(); ++i) {
      z.push_back(pz[i] + offset);
      kl.push_back(piece.kappa_left()[i]);
      kr.push_back(piece.kappa_right()[i]);
      segments.push_back(label);
    }
    return std::pair{pz.front() + offset, pz.back() + offset};
  };
  auto zero_piece = [&](double length) {
    return CouplingProfile::zeros(
        uniform_grid(0.0, length, gap_cells(length, seq.gap_samples_per_cm())));
  };
  auto gap = [&] {
    if (seq.gap_cm() > 0.0) append(zero_piece(seq.gap_cm()), Segment::fanning);
  };

  gap();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& e = seq.elements()[i];
    if (const auto* g = std::get_if<GateElement>(&e)) {
      spans.push_back(append(CouplingProfile::from_gate(g->gate, seq.envelope(i)), Segment::gate));
    } else {
      spans.push_back(append(zero_piece(std::get<InertElement>(e).length_cm), Segment::decoupled));
    }
    gap();
  }
  return {CouplingProfile(std::move(z), std::move(kl), std::move(kr)), std::move(segments),
          std::move(spans)};
}

CouplingProfile build_sequence_profile(const GateSequence& seq) {
  return build_labeled_sequence_profile(seq).profile;
}

// ---------------------------------------------------------------------------

GateElement default_gate_element(const GateSpec& gate, const ExperimentConfig& config) {
  return {gate, shape_by_name("sandwich", config.gate_length_cm, config.samples_per_cm)};
}

namespace {

Unitary3 propagate_sequence(const std::vector<SequenceElement>& elements,
                            const ExperimentConfig& config) {
  const GateSequence seq(elements, config.gap_cm);
  return evolve_unitary(build_sequence_profile(seq), config.propagation);
}

}  // namespace

CommutatorResult commutator_experiment(const ExperimentConfig& config) {
  const auto h = default_gate_element(GateSpec::hadamard(), config);
  const auto x = default_gate_element(GateSpec::pauli_x(), config);
  CommutatorResult r;
  r.hxh = logical_probability_table(propagate_sequence({h, x, h}, config));
  r.xhh = logical_probability_table(propagate_sequence({x, h, h}, config));
  r.max_difference = 0.0;
  for (int k = 0; k < 2; ++k) {
    for (int j = 0; j < 2; ++j) {
      r.max_difference = std::max(r.max_difference, std::abs(r.hxh[k][j] - r.xhh[k][j]));
    }
  }
  return r;
}

PennyResult penny_flipover(bool p_flips, const ExperimentConfig& config) {
  const auto h = default_gate_element(GateSpec::hadamard(), config);
  SequenceElement p_move = InertElement{config.gate_length_cm};
  if (p_flips) p_move = default_gate_element(GateSpec::pauli_x(), config);
  const Unitary3 u = propagate_sequence({h, p_move, h}, config);

  const Complex a0 = u(Mode::L, Mode::L);
  const Complex a1 = u(Mode::R, Mode::L);
  const double norm = std::sqrt(std::norm(a0) + std::norm(a1));
  return {std::norm(a0), QubitState(a0 / norm, a1 / norm), u};
}

double simulated_q_win(const Unitary3& u, const NoiseModel& noise) {
  const CountTable counts = simulate_counts(u, noise);
  const double heads = static_cast<double>(counts.counts[0][0]);
  const double tails = static_cast<double>(counts.counts[0][1]);
  if (heads + tails == 0.0) throw std::domain_error("simulated_q_win: no logical counts");
  return heads / (heads + tails);
}

// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

double number_field(const json& record, const char* key, std::optional<double> fallback) {
  if (!record.contains(key)) {
    if (fallback) return *fallback;
    throw std::invalid_argument(std::string("sequence record is missing '") + key + "'");
  }
  const json& v = record.at(key);
  if (!v.is_number()) {
    throw std::invalid_argument(std::string("sequence field '") + key + "' must be a number");
  }
  return v.get<double>();
}

std::optional<double> optional_field(const json& record, const char* key) {
  if (!record.contains(key)) return std::nullopt;
  return number_field(record, key, std::nullopt);
}

SequenceElement parse_element(const json& record, double samples_per_cm, bool degrees) {
  if (!record.is_object()) throw std::invalid_argument("sequence records must be objects");
  const std::string type = record.value("type", std::string("gate"));
  if (type == "inert") return InertElement{number_field(record, "length", std::nullopt)};
  if (type != "gate") throw std::invalid_argument("unknown sequence element type '" + type + "'");

  const double unit = degrees ? kPi / 180.0 : 1.0;
  const double theta = unit * number_field(record, "theta", std::nullopt);
  const double phi = unit * number_field(record, "phi", 0.0);
  const double length = number_field(record, "length", 2.0);
  std::string envelope = "sandwich";
  if (record.contains("envelope")) {
    if (!record.at("envelope").is_string()) {
      throw std::invalid_argument("sequence field 'envelope' must be a string");
    }
    envelope = record.at("envelope").get<std::string>();
  }
  return GateElement{GateSpec(theta, phi),
                     shape_by_name(envelope, length, samples_per_cm, optional_field(record, "ramp"),
                                   optional_field(record, "flat"),
                                   optional_field(record, "width"))};
}

}  // namespace

GateSequence parse_sequence_json(std::istream& in, double samples_per_cm, bool degrees) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("sequence file is not valid JSON: ") + e.what());
  }
  double gap = kDefaultGapCm;
  const json* records = &doc;
  if (doc.is_object()) {
    if (!doc.contains("elements")) throw std::invalid_argument("sequence object has no 'elements'");
    records = &doc.at("elements");
    gap = number_field(doc, "gap_cm", kDefaultGapCm);
    samples_per_cm = number_field(doc, "samples_per_cm", samples_per_cm);
  }
  if (!records->is_array()) throw std::invalid_argument("sequence elements must be an array");
  if (records->empty()) throw std::invalid_argument("sequence is empty");

  std::vector<SequenceElement> elements;
  for (const auto& r : *records) elements.push_back(parse_element(r, samples_per_cm, degrees));
  return GateSequence(std::move(elements), gap);
}

}  // namespace holo

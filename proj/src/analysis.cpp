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

#include "holo/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "holo/holonomy.hpp"
#include "holo/io.hpp"
#include "json.hpp"

namespace holo {

namespace {

std::array<double, 2> renormalized_row(const std::array<double, 2>& row) {
  if (row[0] < 0.0 || row[1] < 0.0 || !std::isfinite(row[0]) || !std::isfinite(row[1])) {
    throw std::domain_error("average_fidelity: probabilities must be finite and non-negative");
  }
  const double sum = row[0] + row[1];
  if (!(sum > 0.0)) throw std::domain_error("average_fidelity: row has no logical probability");
  return {row[0] / sum, row[1] / sum};
}

}  // namespace

double average_fidelity(const ProbabilityTable& theory, const ProbabilityTable& experiment) {
  double total = 0.0;
  for (int k = 0; k < 2; ++k) {
    const auto t = renormalized_row(theory[k]);
    const auto e = renormalized_row(experiment[k]);
    const double overlap = std::sqrt(t[0] * e[0]) + std::sqrt(t[1] * e[1]);
    total += overlap * overlap;
  }
  return std::min(1.0, 0.5 * total);
}

ProbabilityTable CountTable::frequencies() const {
  ProbabilityTable p{};
  for (int k = 0; k < 2; ++k) {
    for (int j = 0; j < 2; ++j) {
      p[k][j] = total_launched[k] == 0 ? 0.0
                                       : static_cast<double>(counts[k][j]) /
                                             static_cast<double>(total_launched[k]);
    }
  }
  return p;
}

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

std::uint64_t draw_binomial(std::mt19937_64& rng, std::uint64_t n, double p) {
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  std::binomial_distribution<std::uint64_t> dist(n, p);
  return dist(rng);
}

}  // namespace

CountTable simulate_counts(const Unitary3& u, const NoiseModel& noise) {
  if (noise.shots_per_input == 0) throw std::domain_error("simulate_counts: shots must be > 0");
  if (!(noise.outcoupling_variation >= 0.0 && noise.outcoupling_variation < 1.0)) {
    throw std::domain_error("simulate_counts: outcoupling variation must lie in [0, 1)");
  }
  auto rng = make_engine(noise.rng_seed, 0);

  std::array<double, 3> efficiency{1.0, 1.0, 1.0};
  if (noise.outcoupling_variation > 0.0) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (double& e : efficiency) e = std::max(0.0, 1.0 + noise.outcoupling_variation * gauss(rng));
    const double best = *std::max_element(efficiency.begin(), efficiency.end());
    for (double& e : efficiency) e = best > 0.0 ? e / best : 0.0;
  }

  CountTable table;
  constexpr Mode inputs[2] = {Mode::L, Mode::R};
  for (int k = 0; k < 2; ++k) {
    const auto p = single_photon_probabilities(u, inputs[k]);
    const std::uint64_t n = noise.shots_per_input;
    const std::uint64_t n_left = draw_binomial(rng, n, p[0]);
    const double rest = p[1] + p[2];
    const std::uint64_t n_centre = draw_binomial(rng, n - n_left, rest > 0.0 ? p[1] / rest : 0.0);
    const std::uint64_t n_right = n - n_left - n_centre;

    table.counts[k][0] = draw_binomial(rng, n_left, efficiency[0]);
    table.central_counts[k] = draw_binomial(rng, n_centre, efficiency[1]);
    table.counts[k][1] = draw_binomial(rng, n_right, efficiency[2]);
    table.total_launched[k] = n;
  }
  return table;
}

double count_uncertainty(double n, double total) { return std::sqrt(n) + 0.01 * total; }

Leakage leakage(const Unitary3& u) {
  return {std::norm(u(Mode::C, Mode::L)), std::norm(u(Mode::C, Mode::R))};
}

// ---------------------------------------------------------------------------

std::string perturbation_name(const PerturbationKind& kind) {
  switch (kind.index()) {
    case 0:
      return "weight-jitter";
    case 1:
      return "envelope-jitter";
    default:
      return "wavelength-shift";
  }
}

namespace {

CouplingProfile scaled_gate_profile(const GateSpec& gate, const EnvelopeProfile& envelope,
                                    double left_scale, double right_scale) {
  CouplingProfile base = CouplingProfile::from_gate(gate, envelope);
  std::vector<Complex> kl = base.kappa_left();
  std::vector<Complex> kr = base.kappa_right();
  for (auto& k : kl) k *= left_scale;
  for (auto& k : kr) k *= right_scale;
  return CouplingProfile(base.z_grid(), std::move(kl), std::move(kr));
}

double envelope_integral_of(const CouplingProfile& p) {
  std::vector<double> omega(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    omega[i] = std::sqrt(std::norm(p.kappa_left()[i]) + std::norm(p.kappa_right()[i]));
  }
  return trapezoid(p.z_grid(), omega);
}

}  // namespace

CouplingProfile perturb_profile(const GateSpec& gate, const EnvelopeProfile& envelope,
                                const PerturbationKind& kind, std::uint64_t seed,
                                std::size_t trial, std::map<std::string, double>* draw) {
  auto rng = make_engine(seed, static_cast<std::uint64_t>(trial) + 1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::map<std::string, double> record;

  CouplingProfile out = std::visit(
      [&](const auto& k) -> CouplingProfile {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, WeightJitter>) {
          const double left = std::max(0.0, 1.0 + k.sigma * gauss(rng));
          const double right = std::max(0.0, 1.0 + k.sigma * gauss(rng));
          record["left_scale"] = left;
          record["right_scale"] = right;
          return scaled_gate_profile(gate, envelope, left, right);
        } else if constexpr (std::is_same_v<K, EnvelopeJitter>) {
          const auto& z = envelope.z_grid();
          std::vector<double> omega = envelope.omega();
          double xi = gauss(rng);
          double worst = 0.0;
          for (std::size_t i = 0; i < omega.size(); ++i) {
            if (i > 0) {
              const double rho = k.correlation_length_cm > 0.0
                                     ? std::exp(-(z[i] - z[i - 1]) / k.correlation_length_cm)
                                     : 0.0;
              xi = rho * xi + std::sqrt(1.0 - rho * rho) * gauss(rng);
            }
            worst = std::max(worst, std::abs(k.sigma * xi));
            omega[i] = std::max(0.0, omega[i] * (1.0 + k.sigma * xi));
          }
          if (k.preserve_integral) {
            const double area = trapezoid(z, omega);
            if (area > 0.0) {
              const double scale = envelope.integral() / area;
              for (double& w : omega) w *= scale;
            }
          }
          EnvelopeProfile jittered(z, std::move(omega));
          record["integral"] = jittered.integral();
          record["max_relative_jitter"] = worst;
          return CouplingProfile::from_gate(gate, jittered);
        } else {
          const CouplingProfile nominal = CouplingProfile::from_gate(gate, envelope);
          const ChipLayout chip = trajectories_from_profile(nominal, k.nominal_fit, k.layout);
          double a_scale = 1.0 + k.a_scale_offset + k.a_scale_sigma * gauss(rng);
          const double b_scale = 1.0 + k.b_scale_offset + k.b_scale_sigma * gauss(rng);
          if (!(a_scale > 0.0) || !(b_scale > 0.0)) {
            throw std::domain_error("wavelength-shift drew a non-positive scale factor");
          }
          CouplingFit shifted{k.nominal_fit.a * a_scale, k.nominal_fit.b * b_scale, 0.0};
          CouplingProfile p = profile_from_layout(chip, shifted);
          if (k.preserve_integral) {
            const double factor = envelope.integral() / envelope_integral_of(p);
            a_scale *= factor;
            shifted.a *= factor;
            p = profile_from_layout(chip, shifted);
          }
          record["a_scale"] = a_scale;
          record["b_scale"] = b_scale;
          // the layout grid is in mm; map back onto the envelope's cm grid
          return CouplingProfile(envelope.z_grid(), p.kappa_left(), p.kappa_right());
        }
      },
      kind);
  if (draw) *draw = std::move(record);
  return out;
}

SweepStatistics robustness_sweep(const GateSpec& gate, const EnvelopeProfile& envelope,
                                 const PerturbationModel& model, const SweepOptions& options) {
  if (model.trials == 0) throw std::domain_error("robustness_sweep: need at least one trial");
  const ProbabilityTable ideal = ideal_probability_table(gate);
  std::vector<TrialRecord> records(model.trials);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t t = next++; t < model.trials; t = next++) {
      try {
        TrialRecord r;
        r.trial = t;
        const CouplingProfile p =
            perturb_profile(gate, envelope, model.kind, model.rng_seed, t, &r.draw);
        const Unitary3 u = evolve_unitary(p, options.propagation);
        r.fidelity = average_fidelity(ideal, logical_probability_table(u));
        r.leakage = leakage(u);
        records[t] = std::move(r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = model.trials;
      }
    }
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(model.trials)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  SweepStatistics s;
  const double n = static_cast<double>(records.size());
  s.min_fidelity = 1.0;
  s.max_fidelity = 0.0;
  for (const auto& r : records) {
    s.mean_fidelity += r.fidelity / n;
    s.mean_leakage_from_0 += r.leakage.from_0 / n;
    s.mean_leakage_from_1 += r.leakage.from_1 / n;
    s.min_fidelity = std::min(s.min_fidelity, r.fidelity);
    s.max_fidelity = std::max(s.max_fidelity, r.fidelity);
  }
  double var = 0.0;
  for (const auto& r : records) var += (r.fidelity - s.mean_fidelity) * (r.fidelity - s.mean_fidelity);
  s.std_fidelity = std::sqrt(var / n);
  s.records = std::move(records);
  return s;
}

std::string export_sweep_json(const SweepStatistics& stats) {
  using nlohmann::json;
  auto num = [](double v) { return io::round_sig12(v); };
  json trials = json::array();
  for (const auto& r : stats.records) {
    json draw = json::object();
    for (const auto& [name, value] : r.draw) draw[name] = num(value);
    trials.push_back({{"trial", r.trial},
                      {"fidelity", num(r.fidelity)},
                      {"leakage", {{"from_0", num(r.leakage.from_0)}, {"from_1", num(r.leakage.from_1)}}},
                      {"perturbation", draw}});
  }
  json doc = {{"summary",
               {{"trials", stats.records.size()},
                {"mean_fidelity", num(stats.mean_fidelity)},
                {"std_fidelity", num(stats.std_fidelity)},
                {"min_fidelity", num(stats.min_fidelity)},
                {"max_fidelity", num(stats.max_fidelity)},
                {"mean_leakage_from_0", num(stats.mean_leakage_from_0)},
                {"mean_leakage_from_1", num(stats.mean_leakage_from_1)}}},
              {"trials", trials}};
  return doc.dump(2) + "\n";
}

}  // namespace holo

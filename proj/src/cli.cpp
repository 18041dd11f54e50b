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

#include "holo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "holo/analysis.hpp"
#include "holo/envelopes.hpp"
#include "holo/holonomy.hpp"
#include "holo/io.hpp"
#include "holo/layout.hpp"
#include "holo/propagate.hpp"
#include "holo/sequence.hpp"
#include "json.hpp"

namespace holo {

namespace {

using nlohmann::json;

/// Bad input detected after CLI11 parsing; reported with the usage exit code.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

double num(double v) {
  const double r = io::round_sig12(v);
  return r == 0.0 ? 0.0 : r;
}

json complex_json(Complex c) { return json::array({num(c.real()), num(c.imag())}); }

template <typename Derived>
json matrix_json(const Eigen::MatrixBase<Derived>& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json table_json(const ProbabilityTable& p) {
  return json::array({json::array({num(p[0][0]), num(p[0][1])}),
                      json::array({num(p[1][0]), num(p[1][1])})});
}

void table_rows(std::ostream& s, const ProbabilityTable& p, const std::string& prefix) {
  for (int k = 0; k < 2; ++k) {
    for (int j = 0; j < 2; ++j) s << prefix << k << ',' << j << ',' << io::format_number(p[k][j]) << '\n';
  }
}

std::string table_csv(const ProbabilityTable& p) {
  std::ostringstream s;
  s << "input,output,probability\n";
  table_rows(s, p, "");
  return s.str();
}

// ---------------------------------------------------------------------------

struct GlobalOptions {
  std::uint64_t seed = kDefaultSeed;
  double samples_per_cm = kDefaultSamplesPerCm;
  std::size_t steps = 0;
  std::string method = "rk4";
  std::string out_path;
  std::string format = "json";
  bool show_config = false;
  bool degrees = false;

  double angle(double value) const { return degrees ? value * kPi / 180.0 : value; }

  PropagationConfig propagation() const {
    PropagationConfig c;
    c.step_count = steps;
    try {
      c.method = integrator_from_string(method);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return c;
  }

  json to_json() const {
    return {{"seed", seed},
            {"samples_per_cm", num(samples_per_cm)},
            {"steps", steps},
            {"method", method},
            {"format", format},
            {"degrees", degrees},
            {"out", out_path}};
  }
};

struct GateOptions {
  double theta = 0.0;
  double phi = 0.0;
  std::string envelope = "sandwich";
  double length_cm = 2.0;
  std::optional<double> ramp;
  std::optional<double> flat;
  std::optional<double> width;
  std::string envelope_csv;

  void add_to(CLI::App* cmd, bool theta_required) {
    auto* t = cmd->add_option("--theta", theta, "Mixing angle theta (radians unless --degrees)");
    if (theta_required) t->required();
    cmd->add_option("--phi", phi, "Relative phase phi");
    cmd->add_option("--envelope", envelope, "constant, full-cosine, sandwich or raised-gaussian")
        ->check(CLI::IsMember({"constant", "full-cosine", "sandwich", "raised-gaussian"}));
    cmd->add_option("--length", length_cm, "Gate length in cm")->check(CLI::PositiveNumber);
    cmd->add_option("--ramp", ramp, "Sandwich ramp length in cm");
    cmd->add_option("--flat", flat, "Sandwich flat length in cm");
    cmd->add_option("--width", width, "Raised-Gaussian width in cm");
    cmd->add_option("--envelope-csv", envelope_csv, "Sampled envelope (z_cm,omega_per_cm)")
        ->check(CLI::ExistingFile);
  }

  GateSpec gate(const GlobalOptions& g) const { return GateSpec(g.angle(theta), g.angle(phi)); }

  EnvelopeShape shape(const GlobalOptions& g) const {
    if (!envelope_csv.empty()) {
      std::ifstream in(envelope_csv);
      return EnvelopeShape::custom(read_envelope_csv(in));
    }
    return shape_by_name(envelope, length_cm, g.samples_per_cm, ramp, flat, width);
  }

  json to_json(const GlobalOptions& g) const {
    json j = {{"theta", num(g.angle(theta))}, {"phi", num(g.angle(phi))}};
    if (!envelope_csv.empty()) {
      j["envelope"] = "custom";
      j["envelope_csv"] = envelope_csv;
    } else {
      j["envelope"] = envelope;
      j["length_cm"] = num(length_cm);
      if (ramp) j["ramp_cm"] = num(*ramp);
      if (flat) j["flat_cm"] = num(*flat);
      if (width) j["width_cm"] = num(*width);
    }
    return j;
  }
};

std::vector<double> parse_q_grid(const std::string& text) {
  std::vector<double> grid;
  for (const auto& field : io::split_csv_line(text)) {
    double q;
    try {
      q = io::parse_double(field);
    } catch (const std::exception&) {
      throw UsageError("malformed q-grid entry '" + field + "'");
    }
    if (!(q >= 0.0 && q <= 1.0)) throw UsageError("q-grid entries must lie in [0, 1]");
    grid.push_back(q);
  }
  if (grid.empty()) throw UsageError("q-grid is empty");
  return grid;
}

GateSequence read_sequence_file(const std::string& path, const GlobalOptions& g) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open sequence file " + path);
  try {
    return parse_sequence_json(in, g.samples_per_cm, g.degrees);
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

CouplingFit read_fit(const std::string& scan_path, double a, double b) {
  if (scan_path.empty()) return make_coupling_fit(a, b);
  std::ifstream in(scan_path);
  const auto points = read_scan_csv(in);
  return fit_coupling_curve(points);
}

json fit_json(const CouplingFit& fit) {
  return {{"a_per_cm", num(fit.a)}, {"b_per_um", num(fit.b)}, {"residual_norm", num(fit.residual_norm)}};
}

// ---------------------------------------------------------------------------
// Commands. Each fills `config` before running so --show-config can stop
// after the first step, then returns the rendered report.

struct Command {
  std::function<json()> config;
  std::function<std::string(const json& config)> run;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json gate_report(const GateSpec& gate, const EnvelopeProfile& envelope, const Unitary3& u) {
  const Unitary3 ideal = analytic_full_unitary(gate);
  const ProbabilityTable table = logical_probability_table(u);
  const Leakage leak = leakage(u);
  return {{"analytic_holonomy", matrix_json(analytic_holonomy(gate).matrix())},
          {"analytic_unitary", matrix_json(ideal.matrix())},
          {"simulated_unitary", matrix_json(u.matrix())},
          {"max_entry_error", num((u.matrix() - ideal.matrix()).cwiseAbs().maxCoeff())},
          {"unitarity_deviation", num(u.unitarity_deviation())},
          {"cyclicity_residual", num(check_cyclicity(envelope).residual)},
          {"fidelity", num(average_fidelity(ideal_probability_table(gate), table))},
          {"leakage", {{"from_0", num(leak.from_0)}, {"from_1", num(leak.from_1)}}},
          {"probability_table", table_json(table)}};
}

Command gate_command(const GlobalOptions& g, const GateOptions& opts) {
  return {[&] { return json{{"gate", opts.to_json(g)}}; },
          [&](const json& config) {
            const GateSpec gate = opts.gate(g);
            const EnvelopeProfile env = build_envelope(opts.shape(g));
            const Unitary3 u = evolve_unitary(CouplingProfile::from_gate(gate, env), g.propagation());
            if (g.format == "csv") return table_csv(logical_probability_table(u));
            json report = gate_report(gate, env, u);
            report["command"] = "gate";
            report["config"] = config;
            return dump(report);
          }};
}

json element_json(const SequenceElement& e, std::pair<double, double> span) {
  json j;
  if (const auto* gate = std::get_if<GateElement>(&e)) {
    j = {{"type", "gate"},
         {"theta", num(gate->gate.theta())},
         {"phi", num(gate->gate.phi())},
         {"envelope", gate->shape.name()},
         {"analytic_holonomy", matrix_json(analytic_holonomy(gate->gate).matrix())}};
  } else {
    j = {{"type", "inert"}};
  }
  j["z_begin_cm"] = num(span.first);
  j["z_end_cm"] = num(span.second);
  return j;
}

Command sequence_command(const GlobalOptions& g, const std::vector<std::string>& files) {
  return {[&] { return json{{"sequence_files", files}}; },
          [&](const json& config) {
            json reports = json::array();
            std::vector<ProbabilityTable> tables;
            std::ostringstream csv;
            csv << "sequence,input,output,probability\n";
            for (std::size_t s = 0; s < files.size(); ++s) {
              const GateSequence seq = read_sequence_file(files[s], g);
              const SequenceProfile sp = build_labeled_sequence_profile(seq);
              const Unitary3 u = evolve_unitary(sp.profile, g.propagation());
              const Holonomy2 analytic = compose_analytic(seq);
              const ProbabilityTable table = logical_probability_table(u);
              tables.push_back(table);
              json elements = json::array();
              for (std::size_t i = 0; i < seq.size(); ++i) {
                elements.push_back(element_json(seq.elements()[i], sp.element_spans[i]));
              }
              const Leakage leak = leakage(u);
              reports.push_back(
                  {{"file", files[s]},
                   {"elements", elements},
                   {"length_cm", num(sp.profile.z_end() - sp.profile.z_begin())},
                   {"analytic_holonomy", matrix_json(analytic.matrix())},
                   {"simulated_logical_block", matrix_json(u.logical_block())},
                   {"max_block_error",
                    num((u.logical_block() - analytic.matrix()).cwiseAbs().maxCoeff())},
                   {"probability_table", table_json(table)},
                   {"q_win_probability", num(table[0][0])},
                   {"leakage", {{"from_0", num(leak.from_0)}, {"from_1", num(leak.from_1)}}}});
              table_rows(csv, table, std::to_string(s) + ",");
            }
            if (g.format == "csv") return csv.str();
            json report = {{"command", "sequence"}, {"config", config}, {"sequences", reports}};
            if (tables.size() > 1) {
              double worst = 0.0;
              for (std::size_t a = 0; a < tables.size(); ++a) {
                for (std::size_t b = a + 1; b < tables.size(); ++b) {
                  for (int k = 0; k < 2; ++k) {
                    for (int j = 0; j < 2; ++j) {
                      worst = std::max(worst, std::abs(tables[a][k][j] - tables[b][k][j]));
                    }
                  }
                }
              }
              report["max_difference"] = num(worst);
            }
            return dump(report);
          }};
}

ExperimentConfig experiment_config(const GlobalOptions& g, double gate_length, double gap) {
  ExperimentConfig c;
  c.gate_length_cm = gate_length;
  c.samples_per_cm = g.samples_per_cm;
  c.gap_cm = gap;
  c.propagation = g.propagation();
  return c;
}

struct ExperimentOptions {
  double gate_length_cm = 2.0;
  double gap_cm = kDefaultGapCm;
  void add_to(CLI::App* cmd) {
    cmd->add_option("--length", gate_length_cm, "Gate length in cm")->check(CLI::PositiveNumber);
    cmd->add_option("--gap", gap_cm, "Zero-coupling gap between gates in cm")
        ->check(CLI::NonNegativeNumber);
  }
  json to_json() const { return {{"gate_length_cm", num(gate_length_cm)}, {"gap_cm", num(gap_cm)}}; }
};

Command commutator_command(const GlobalOptions& g, const ExperimentOptions& opts) {
  return {[&] { return json{{"experiment", opts.to_json()}}; },
          [&](const json& config) {
            const auto r = commutator_experiment(experiment_config(g, opts.gate_length_cm, opts.gap_cm));
            if (g.format == "csv") {
              std::ostringstream csv;
              csv << "sequence,input,output,probability\n";
              table_rows(csv, r.hxh, "H-X-H,");
              table_rows(csv, r.xhh, "X-H-H,");
              return csv.str();
            }
            return dump({{"command", "commutator"},
                         {"config", config},
                         {"probability_table_hxh", table_json(r.hxh)},
                         {"probability_table_xhh", table_json(r.xhh)},
                         {"max_difference", num(r.max_difference)}});
          }};
}

struct GameOptions {
  ExperimentOptions experiment;
  std::uint64_t shots = 10000;
  double variation = 0.01;
};

Command game_command(const GlobalOptions& g, const GameOptions& opts) {
  return {[&] {
            json j{{"experiment", opts.experiment.to_json()},
                   {"shots_per_input", opts.shots},
                   {"outcoupling_variation", num(opts.variation)}};
            return j;
          },
          [&](const json& config) {
            const ExperimentConfig ec =
                experiment_config(g, opts.experiment.gate_length_cm, opts.experiment.gap_cm);
            json branches = json::object();
            std::ostringstream csv;
            csv << "branch,q_win_probability,simulated_q_win\n";
            for (const bool flips : {true, false}) {
              const PennyResult r = penny_flipover(flips, ec);
              const double simulated = simulated_q_win(r.unitary, {opts.shots, opts.variation, g.seed});
              const std::string name = flips ? "flip" : "no_flip";
              branches[name] = {{"q_win_probability", num(r.q_win_probability)},
                                {"simulated_q_win", num(simulated)},
                                {"final_state",
                                 {complex_json(r.final_state.amplitude_0()),
                                  complex_json(r.final_state.amplitude_1())}}};
              csv << name << ',' << io::format_number(r.q_win_probability) << ','
                  << io::format_number(simulated) << '\n';
            }
            if (g.format == "csv") return csv.str();
            return dump({{"command", "game"}, {"config", config}, {"branches", branches}});
          }};
}

struct LayoutCommandOptions {
  GateOptions gate;
  std::string sequence_file;
  std::string scan_csv;
  double a = 20.0;
  double b = 0.2;
  LayoutOptions layout{};
  bool fanning = false;
  FanningSpec fan{};
};

Command layout_command(const GlobalOptions& g, const LayoutCommandOptions& opts,
                       std::ostream& err) {
  return {[&] {
            json j{{"decoupled_separation_um", num(opts.layout.decoupled_separation_um)},
                   {"blend_width_um", num(opts.layout.blend_width_um)},
                   {"min_separation_um", num(opts.layout.min_separation_um)},
                   {"fanning", opts.fanning}};
            if (opts.sequence_file.empty()) {
              j["gate"] = opts.gate.to_json(g);
            } else {
              j["sequence_file"] = opts.sequence_file;
            }
            if (opts.scan_csv.empty()) {
              j["fit"] = {{"a_per_cm", num(opts.a)}, {"b_per_um", num(opts.b)}};
            } else {
              j["scan_csv"] = opts.scan_csv;
            }
            if (opts.fanning) {
              j["pitch_um"] = num(opts.fan.pitch_um);
              j["fan_length_mm"] = num(opts.fan.fan_length_mm);
            }
            return j;
          },
          [&](const json&) {
            const CouplingFit fit = read_fit(opts.scan_csv, opts.a, opts.b);
            LayoutMetadata meta;
            meta.fit = fit;
            ChipLayout chip;
            if (opts.sequence_file.empty()) {
              const GateSpec gate = opts.gate.gate(g);
              const EnvelopeProfile env = build_envelope(opts.gate.shape(g));
              chip = trajectories_from_profile(CouplingProfile::from_gate(gate, env), fit, opts.layout);
              meta.gates.push_back(gate);
              meta.cyclicity_residual = check_cyclicity(env).residual;
            } else {
              const GateSequence seq = read_sequence_file(opts.sequence_file, g);
              const SequenceProfile sp = build_labeled_sequence_profile(seq);
              chip = trajectories_from_profile(sp.profile, fit, opts.layout, sp.segments);
              for (const auto& e : seq.elements()) {
                if (const auto* ge = std::get_if<GateElement>(&e)) meta.gates.push_back(ge->gate);
              }
            }
            if (opts.fanning) chip = add_fanning(chip, fit, opts.fan);
            for (const auto& w : layout_warnings(chip, opts.layout)) err << "warning: " << w << '\n';
            return export_layout(chip, g.format == "csv" ? ExportFormat::csv : ExportFormat::json,
                                 meta);
          }};
}

Command fit_command(const GlobalOptions& g, const std::string& scan_csv) {
  return {[&] { return json{{"scan_csv", scan_csv}}; },
          [&](const json& config) {
            const CouplingFit fit = read_fit(scan_csv, 0.0, 0.0);
            if (g.format == "csv") {
              return "a_per_cm,b_per_um,residual_norm\n" + io::format_number(fit.a) + ',' +
                     io::format_number(fit.b) + ',' + io::format_number(fit.residual_norm) + '\n';
            }
            return dump({{"command", "fit"}, {"config", config}, {"fit", fit_json(fit)}});
          }};
}

struct HomOptions {
  GateOptions gate;
  std::string q_grid = "0,0.25,0.5,0.75,1";
};

inline constexpr double kExperimentalVisibility = 0.95;
inline constexpr double kExperimentalVisibilityUncertainty = 0.046;

Command hom_command(const GlobalOptions& g, const HomOptions& opts) {
  return {[&] { return json{{"gate", opts.gate.to_json(g)}, {"q_grid", opts.q_grid}}; },
          [&](const json& config) {
            const std::vector<double> grid = parse_q_grid(opts.q_grid);
            const GateSpec gate = opts.gate.gate(g);
            const EnvelopeProfile env = build_envelope(opts.gate.shape(g));
            const Unitary3 u = evolve_unitary(CouplingProfile::from_gate(gate, env), g.propagation());
            json curve = json::array();
            std::ostringstream csv;
            csv << "q,coincidence\n";
            for (double q : grid) {
              const double p = hom_coincidence(u, q);
              curve.push_back({{"q", num(q)}, {"coincidence", num(p)}});
              csv << io::format_number(q) << ',' << io::format_number(p) << '\n';
            }
            const double visibility = hom_visibility(u);
            if (g.format == "csv") return csv.str();
            return dump({{"command", "hom"},
                         {"config", config},
                         {"visibility", num(visibility)},
                         {"curve", curve},
                         {"experimental_reference",
                          {{"visibility", kExperimentalVisibility},
                           {"uncertainty", kExperimentalVisibilityUncertainty}}}});
          }};
}

struct RobustnessOptions {
  GateOptions gate;
  std::string perturbation = "weight";
  double sigma = 0.01;
  double correlation_length_cm = 0.0;
  bool preserve_integral = false;
  double a_sigma = 0.0;
  double b_sigma = 0.0;
  double a_offset = 0.0;
  double b_offset = 0.0;
  double a = 20.0;
  double b = 0.2;
  std::size_t trials = 100;
  unsigned threads = 0;

  PerturbationKind kind() const {
    if (perturbation == "weight") return WeightJitter{sigma};
    if (perturbation == "envelope") {
      return EnvelopeJitter{sigma, correlation_length_cm, preserve_integral};
    }
    WavelengthShift w;
    w.a_scale_sigma = a_sigma;
    w.b_scale_sigma = b_sigma;
    w.a_scale_offset = a_offset;
    w.b_scale_offset = b_offset;
    w.preserve_integral = preserve_integral;
    w.nominal_fit = make_coupling_fit(a, b);
    return w;
  }

  json to_json(const GlobalOptions& g) const {
    json j{{"gate", gate.to_json(g)},
           {"perturbation", perturbation},
           {"trials", trials},
           {"preserve_integral", preserve_integral}};
    if (perturbation == "wavelength") {
      j["a_scale_sigma"] = num(a_sigma);
      j["b_scale_sigma"] = num(b_sigma);
      j["a_scale_offset"] = num(a_offset);
      j["b_scale_offset"] = num(b_offset);
      j["fit"] = {{"a_per_cm", num(a)}, {"b_per_um", num(b)}};
    } else {
      j["sigma"] = num(sigma);
      if (perturbation == "envelope") j["correlation_length_cm"] = num(correlation_length_cm);
    }
    return j;
  }
};

Command robustness_command(const GlobalOptions& g, const RobustnessOptions& opts) {
  return {[&] { return opts.to_json(g); },
          [&](const json& config) {
            const GateSpec gate = opts.gate.gate(g);
            const EnvelopeProfile env = build_envelope(opts.gate.shape(g));
            PerturbationModel model{opts.kind(), opts.trials, g.seed};
            SweepOptions sweep{g.propagation(), opts.threads};
            const SweepStatistics stats = robustness_sweep(gate, env, model, sweep);
            if (g.format == "csv") {
              std::ostringstream csv;
              csv << "trial,fidelity,leakage_from_0,leakage_from_1\n";
              for (const auto& r : stats.records) {
                csv << r.trial << ',' << io::format_number(r.fidelity) << ','
                    << io::format_number(r.leakage.from_0) << ','
                    << io::format_number(r.leakage.from_1) << '\n';
              }
              return csv.str();
            }
            json report = json::parse(export_sweep_json(stats));
            report["command"] = "robustness";
            report["config"] = config;
            return dump(report);
          }};
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation and layout tools for three-waveguide holonomic gates", "holo"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--samples-per-cm", g.samples_per_cm, "Envelope grid density")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--steps", g.steps, "Integration steps (0 = automatic)")->capture_default_str();
  app.add_option("--method", g.method, "rk4 or piecewise-exponential")
      ->check(CLI::IsMember({"rk4", "piecewise-exponential"}))
      ->capture_default_str();
  app.add_option("--out", g.out_path, "Output file (default: standard output)");
  app.add_option("--format", g.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_flag("--show-config", g.show_config, "Print the resolved configuration and exit");
  app.add_flag("--degrees", g.degrees, "Read angles in degrees");

  std::string name;

  GateOptions gate_opts;
  auto* gate_cmd = app.add_subcommand("gate", "Simulate one gate");
  gate_opts.add_to(gate_cmd, true);

  std::vector<std::string> sequence_files;
  auto* seq_cmd = app.add_subcommand("sequence", "Simulate gate sequences from JSON files");
  seq_cmd->add_option("files", sequence_files, "Sequence definition files")
      ->required()
      ->check(CLI::ExistingFile);

  ExperimentOptions comm_opts;
  auto* comm_cmd = app.add_subcommand("commutator", "H-X-H versus X-H-H");
  comm_opts.add_to(comm_cmd);

  GameOptions game_opts;
  auto* game_cmd = app.add_subcommand("game", "Penny flipover, both branches");
  game_opts.experiment.add_to(game_cmd);
  game_cmd->add_option("--shots", game_opts.shots, "Photons per input for the count model")
      ->check(CLI::PositiveNumber);
  game_cmd->add_option("--variation", game_opts.variation, "Outcoupling variation")
      ->check(CLI::Range(0.0, 0.999));

  LayoutCommandOptions layout_opts;
  auto* layout_cmd = app.add_subcommand("layout", "Compile waveguide trajectories");
  layout_opts.gate.add_to(layout_cmd, false);
  auto* layout_seq = layout_cmd->add_option("--sequence", layout_opts.sequence_file,
                                            "Sequence file instead of a single gate")
                         ->check(CLI::ExistingFile);
  layout_cmd->get_option("--theta")->excludes(layout_seq);
  auto* layout_scan =
      layout_cmd->add_option("--scan", layout_opts.scan_csv, "Coupling scan (delta_um,kappa_per_cm)")
          ->check(CLI::ExistingFile);
  layout_cmd->add_option("--a", layout_opts.a, "Coupling prefactor a (1/cm)")
      ->check(CLI::PositiveNumber)
      ->excludes(layout_scan);
  layout_cmd->add_option("--b", layout_opts.b, "Coupling decay b (1/um)")
      ->check(CLI::PositiveNumber)
      ->excludes(layout_scan);
  layout_cmd->add_option("--decoupled-separation", layout_opts.layout.decoupled_separation_um,
                         "Separation of decoupled waveguides (um)");
  layout_cmd->add_option("--blend", layout_opts.layout.blend_width_um,
                         "Half-width of the clamp blend (um)");
  layout_cmd->add_option("--min-separation", layout_opts.layout.min_separation_um,
                         "Fabrication minimum separation (um)");
  layout_cmd->add_flag("--fanning", layout_opts.fanning, "Add fan-in and fan-out sections");
  layout_cmd->add_option("--pitch", layout_opts.fan.pitch_um, "Fiber-array pitch (um)");
  layout_cmd->add_option("--fan-length", layout_opts.fan.fan_length_mm, "Fan length (mm)");

  std::string fit_scan;
  auto* fit_cmd = app.add_subcommand("fit", "Fit kappa = a exp(-b delta) to a coupling scan");
  fit_cmd->add_option("--scan", fit_scan, "Coupling scan (delta_um,kappa_per_cm)")
      ->required()
      ->check(CLI::ExistingFile);

  HomOptions hom_opts;
  auto* hom_cmd = app.add_subcommand("hom", "Two-photon coincidence curve and visibility");
  hom_opts.gate.add_to(hom_cmd, true);
  hom_cmd->add_option("--q-grid", hom_opts.q_grid, "Comma-separated indistinguishabilities");

  RobustnessOptions rob_opts;
  auto* rob_cmd = app.add_subcommand("robustness", "Monte-Carlo robustness sweep");
  rob_opts.gate.add_to(rob_cmd, true);
  rob_cmd->add_option("--perturbation", rob_opts.perturbation, "weight, envelope or wavelength")
      ->check(CLI::IsMember({"weight", "envelope", "wavelength"}));
  rob_cmd->add_option("--sigma", rob_opts.sigma, "Relative jitter")->check(CLI::NonNegativeNumber);
  rob_cmd->add_option("--correlation-length", rob_opts.correlation_length_cm,
                      "Envelope jitter correlation length (cm)")
      ->check(CLI::NonNegativeNumber);
  rob_cmd->add_flag("--preserve-integral", rob_opts.preserve_integral,
                    "Rescale each trial onto the nominal envelope integral");
  rob_cmd->add_option("--a-sigma", rob_opts.a_sigma, "Spread of the a scale factor");
  rob_cmd->add_option("--b-sigma", rob_opts.b_sigma, "Spread of the b scale factor");
  rob_cmd->add_option("--a-offset", rob_opts.a_offset, "Offset of the a scale factor");
  rob_cmd->add_option("--b-offset", rob_opts.b_offset, "Offset of the b scale factor");
  rob_cmd->add_option("--a", rob_opts.a, "Nominal a (1/cm)")->check(CLI::PositiveNumber);
  rob_cmd->add_option("--b", rob_opts.b, "Nominal b (1/um)")->check(CLI::PositiveNumber);
  rob_cmd->add_option("--trials", rob_opts.trials, "Number of trials")->check(CLI::PositiveNumber);
  rob_cmd->add_option("--threads", rob_opts.threads, "Worker threads (0 = all cores)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::kSuccess : exit_code::kUsageError;
  }

  Command cmd;
  if (*gate_cmd) {
    name = "gate";
    cmd = gate_command(g, gate_opts);
  } else if (*seq_cmd) {
    name = "sequence";
    cmd = sequence_command(g, sequence_files);
  } else if (*comm_cmd) {
    name = "commutator";
    cmd = commutator_command(g, comm_opts);
  } else if (*game_cmd) {
    name = "game";
    cmd = game_command(g, game_opts);
  } else if (*layout_cmd) {
    name = "layout";
    cmd = layout_command(g, layout_opts, err);
  } else if (*fit_cmd) {
    name = "fit";
    cmd = fit_command(g, fit_scan);
  } else if (*hom_cmd) {
    name = "hom";
    cmd = hom_command(g, hom_opts);
  } else {
    name = "robustness";
    cmd = robustness_command(g, rob_opts);
  }

  try {
    json config = cmd.config();
    config["global"] = g.to_json();
    config["command"] = name;
    if (g.show_config) {
      write_output(dump(config), g.out_path, out);
      return exit_code::kSuccess;
    }
    write_output(cmd.run(config), g.out_path, out);
    return exit_code::kSuccess;
  } catch (const std::invalid_argument& e) {
    err << "holo " << name << ": " << e.what() << '\n';
    return exit_code::kUsageError;
  } catch (const std::exception& e) {
    err << "holo " << name << ": " << e.what() << '\n';
    return exit_code::kComputationError;
  }
}

}  // namespace holo

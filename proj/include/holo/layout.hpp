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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "holo/core.hpp"

/**
 * Waveguide layout compilation.
 *
 * Couplings are mapped to separations through the empirical law
 * kappa = a exp(-b delta) (a in 1/cm, delta in um, b in 1/um). The centre
 * waveguide sits at x = 0; the left one at -delta_L and the right one at
 * +delta_R. Layout positions along the chip are in mm.
 */
namespace holo {

struct CouplingFit {
  double a;  ///< 1/cm
  double b;  ///< 1/um
  /// Euclidean norm of the log-space residuals of the fit (0 when given directly).
  double residual_norm = 0.0;
};

/// Validates a > 0, b > 0.
CouplingFit make_coupling_fit(double a, double b);

struct ScanPoint {
  double delta_um;
  double kappa_per_cm;
};

/// Least-squares fit of ln kappa = ln a - b delta. Throws
/// UnderdeterminedError for fewer than two distinct separations and
/// std::domain_error for non-positive kappa or delta.
CouplingFit fit_coupling_curve(std::span<const ScanPoint> points);

/// Reads `delta_um,kappa_per_cm` CSV (header required).
std::vector<ScanPoint> read_scan_csv(std::istream& in);

/// delta = -ln(kappa / a) / b. Throws std::domain_error for kappa > a or
/// kappa <= 0.
double distance_from_coupling(double kappa, const CouplingFit& fit);

/// kappa = a exp(-b delta)
double coupling_from_distance(double delta_um, const CouplingFit& fit);

enum class Segment : std::uint8_t { gate, fanning, decoupled };

std::string to_string(Segment s);
Segment segment_from_string(const std::string& name);

namespace layout_flags {
inline constexpr std::uint8_t kClamped = 1;         ///< separation held at the decoupled value
inline constexpr std::uint8_t kBelowMinSeparation = 2;
}  // namespace layout_flags

struct ChipLayout {
  std::vector<double> z_mm;
  std::vector<double> x_left_um;
  std::vector<double> x_center_um;
  std::vector<double> x_right_um;
  std::vector<Segment> segments;
  /// layout_flags bits per point; not part of the exported file formats.
  std::vector<std::uint8_t> flags;

  std::size_t size() const { return z_mm.size(); }
  bool empty() const { return z_mm.empty(); }
  double length_mm() const { return empty() ? 0.0 : z_mm.back() - z_mm.front(); }
};

/// Throws std::domain_error if columns differ in size, z is not strictly
/// increasing or the waveguides are not ordered x_L < x_C < x_R.
void validate_layout(const ChipLayout& layout);

struct LayoutOptions {
  /// Separation used wherever the coupling falls below a exp(-b * this).
  double decoupled_separation_um = 40.0;
  /// Half-width of the cosine blend from the exact separation onto the
  /// decoupled value; 0 gives a hard clamp.
  double blend_width_um = 2.0;
  double min_separation_um = 7.0;
};

/// Compiles a real, non-negative coupling profile into trajectories.
/// `segments` labels each grid point (all `gate` when empty).
/// Throws UnsupportedGeometryError for complex or negative couplings and
/// std::domain_error for couplings above the fit prefactor.
ChipLayout trajectories_from_profile(const CouplingProfile& profile, const CouplingFit& fit,
                                     const LayoutOptions& options = {},
                                     std::span<const Segment> segments = {});

/// Couplings implied by a layout: kappa_L = a exp(-b (x_C - x_L)), same for R.
CouplingProfile profile_from_layout(const ChipLayout& layout, const CouplingFit& fit);

enum class FanEnds { front, back, both };

struct FanningSpec {
  double pitch_um = 82.0;
  double fan_length_mm = 5.0;
  FanEnds ends = FanEnds::both;
  /// Upper bound on the coupling integral over one fan (rad).
  double max_coupling_integral = 0.01;
  /// Sample spacing along the fan.
  double step_mm = 0.01;
};

class FanningError : public std::domain_error {
 public:
  FanningError(const std::string& what, double max_fan_length_mm)
      : std::domain_error(what), max_fan_length_mm_(max_fan_length_mm) {}
  /// Longest fan with the same start and end separations that meets the bound.
  double max_fan_length_mm() const { return max_fan_length_mm_; }

 private:
  double max_fan_length_mm_;
};

/// Coupling integral (rad) over a cosine fan from `start` to `pitch`
/// separation on both outer waveguides.
double fan_coupling_integral(double start_left_um, double start_right_um, double pitch_um,
                             double fan_length_mm, const CouplingFit& fit);

/// Appends half-cosine ramps that take the outer waveguides to -pitch and
/// +pitch. The result starts at z = 0 mm. Throws std::domain_error when the
/// pitch does not exceed the end separations, FanningError when the implied
/// coupling over a fan exceeds the bound.
ChipLayout add_fanning(const ChipLayout& layout, const CouplingFit& fit, const FanningSpec& spec);

struct LayoutMetadata {
  std::optional<CouplingFit> fit;
  std::vector<GateSpec> gates;
  std::optional<double> cyclicity_residual;
};

enum class ExportFormat { csv, json };

/// CSV `z_mm,x_L_um,x_C_um,x_R_um,segment` or the same rows as JSON objects
/// under "points" plus a "metadata" block. Numbers carry 12 significant
/// digits. Throws std::domain_error for an empty layout.
std::string export_layout(const ChipLayout& layout, ExportFormat format,
                          const LayoutMetadata& metadata = {});

/// Parses the CSV export back into a layout (flags are not stored and come
/// back zero).
ChipLayout import_layout_csv(std::istream& in);

/// Fabrication notes: sample-length budget and points below min separation.
std::vector<std::string> layout_warnings(const ChipLayout& layout,
                                         const LayoutOptions& options = {});

}  // namespace holo

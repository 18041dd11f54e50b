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

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "holo/core.hpp"

namespace holo {

inline constexpr double kDefaultSamplesPerCm = 1000.0;

struct ConstantShape {};
struct FullCosineShape {};
/// Cosine ramp up, flat plateau, cosine ramp down. Any length left over from
/// 2*ramp + flat is split into zero-coupling margins on both sides.
struct SandwichShape {
  double ramp_length;
  double flat_length;
};
/// Gaussian centred on the section, lowered so it vanishes at both ends.
struct RaisedGaussianShape {
  double width;
};
/// User samples, rescaled onto the cyclic budget on their own grid.
struct CustomShape {
  std::vector<double> z_grid;
  std::vector<double> omega;
};

using ShapeKind =
    std::variant<ConstantShape, FullCosineShape, SandwichShape, RaisedGaussianShape, CustomShape>;

class EnvelopeShape {
 public:
  static EnvelopeShape constant(double total_length,
                                double samples_per_cm = kDefaultSamplesPerCm);
  static EnvelopeShape full_cosine(double total_length,
                                   double samples_per_cm = kDefaultSamplesPerCm);
  static EnvelopeShape sandwich(double total_length, double ramp_length, double flat_length,
                                double samples_per_cm = kDefaultSamplesPerCm);
  static EnvelopeShape raised_gaussian(double total_length, double width,
                                       double samples_per_cm = kDefaultSamplesPerCm);
  static EnvelopeShape custom(const EnvelopeProfile& samples);

  const ShapeKind& kind() const { return kind_; }
  double total_length() const { return total_length_; }
  double samples_per_cm() const { return samples_per_cm_; }
  /// "constant", "full-cosine", "sandwich", "raised-gaussian" or "custom".
  std::string name() const;

 private:
  EnvelopeShape(ShapeKind kind, double total_length, double samples_per_cm);

  ShapeKind kind_;
  double total_length_;
  double samples_per_cm_;
};

/// The four analytic shapes with their canonical parameters for a given
/// length: sandwich uses quarter-length ramps, the Gaussian a sixth-length
/// width.
std::vector<EnvelopeShape> builtin_shapes(double total_length,
                                          double samples_per_cm = kDefaultSamplesPerCm);

/// Looks up a built-in shape by name with canonical parameters; ramp/flat or
/// width override them when given.
EnvelopeShape shape_by_name(const std::string& name, double total_length,
                            double samples_per_cm = kDefaultSamplesPerCm,
                            std::optional<double> ramp_length = std::nullopt,
                            std::optional<double> flat_length = std::nullopt,
                            std::optional<double> width = std::nullopt);

/// Samples the shape on [0, total_length] and rescales it by one constant so
/// the trapezoid integral is exactly pi. Throws NormalizationError if the
/// shape is identically zero.
EnvelopeProfile build_envelope(const EnvelopeShape& shape);

struct CyclicityCheck {
  double delta_final;
  double residual;
};

/// delta_final = trapezoid integral of omega; residual = delta_final - pi.
CyclicityCheck check_cyclicity(const EnvelopeProfile& profile);

/// Strictly increasing map of [0, 1] onto itself.
using Warp = std::function<double(double)>;

/// Omega~(z) = Omega(g(s)) g'(s) with s the normalized position. g' comes
/// from three-point finite differences on the grid, and the result is
/// rescaled to the input's integral.
EnvelopeProfile reparametrize(const EnvelopeProfile& profile, const Warp& warp);

/// Multiplies omega by (pi + epsilon) / pi. The input must be cyclic.
EnvelopeProfile scale_to_cyclicity_error(const EnvelopeProfile& profile, double epsilon);

/// Reads `z_cm,omega_per_cm` CSV (header required). No normalization.
EnvelopeProfile read_envelope_csv(std::istream& in);

}  // namespace holo

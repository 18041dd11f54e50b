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

#include "holo/core.hpp"

/**
 * Closed-form holonomy algebra of the three-waveguide coupler.
 *
 * With kappa_L = Omega sin(theta/2) e^{i phi} and kappa_R = Omega cos(theta/2)
 * the Hamiltonian annihilates the dark mode and maps the bright mode onto the
 * centre waveguide. The bright/centre pair rotates by the accumulated phase
 * delta(z) = int Omega dz; at delta = pi the bright mode returns with a sign
 * flip while the dark mode is untouched, so the gate is the reflection
 * 2|dark><dark| - 1.
 */
namespace holo {

struct ModePair {
  Vector3c dark;
  Vector3c bright;
};

/// dark = (-cos(theta/2), 0, sin(theta/2) e^{i phi}),
/// bright = (sin(theta/2) e^{-i phi}, 0, cos(theta/2)) on (L, C, R).
ModePair dark_bright(const GateSpec& gate);

/// The frame (Phi_1, Phi_2(z)) that spans the geometric subspace along a
/// given envelope.
class GeometricFrame {
 public:
  GeometricFrame(const GateSpec& gate, const EnvelopeProfile& envelope);

  const Vector3c& phi1() const { return modes_.dark; }
  const ModePair& modes() const { return modes_; }
  const std::vector<double>& z_grid() const { return envelope_.z_grid(); }

  /// Exact integral of the interpolated envelope from z_begin to z.
  double delta_at(double z) const;
  /// e^{i delta} (cos(delta) bright - i sin(delta) c_unit)
  Vector3c phi2_at(double z) const;
  /// Same, evaluated at grid sample k.
  Vector3c phi2_at_sample(std::size_t k) const;

 private:
  ModePair modes_;
  EnvelopeProfile envelope_;
  std::vector<double> delta_;
};

/// max over grid samples and m, l in {1, 2} of |<phi_m(z)| H(z) |phi_l(z)>|.
/// Throws std::domain_error if the profile grid differs from the frame grid.
double holonomic_condition_residual(const CouplingProfile& profile,
                                    const GeometricFrame& frame);

/// [[0, 0], [0, i Omega(z)]] in the (Phi_1, Phi_2) frame.
Matrix2c anandan_connection(const GateSpec& gate, const EnvelopeProfile& envelope, double z);

/// Path-ordered exponential of the connection over the whole envelope, in the
/// (Phi_1, Phi_2) frame; diag(1, -1) for a cyclic envelope.
Matrix2c connection_holonomy(const GateSpec& gate, const EnvelopeProfile& envelope);

/// connection_holonomy mapped back onto the logical (L, R) basis.
Holonomy2 holonomy_from_connection(const GateSpec& gate, const EnvelopeProfile& envelope);

/// [[cos t, -e^{-i p} sin t], [-e^{i p} sin t, -cos t]]
Holonomy2 analytic_holonomy(const GateSpec& gate);

/// 2 |dark><dark| - 1 on (L, C, R).
Unitary3 analytic_full_unitary(const GateSpec& gate);

/// |analytic_holonomy(gate)|^2 as p[input][output].
ProbabilityTable ideal_probability_table(const GateSpec& gate);

}  // namespace holo

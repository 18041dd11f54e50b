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

#include "holo/holonomy.hpp"

#include <cmath>

namespace holo {

ModePair dark_bright(const GateSpec& gate) {
  const double s = std::sin(0.5 * gate.theta());
  const double c = std::cos(0.5 * gate.theta());
  ModePair m;
  m.dark << -c, 0.0, s * std::polar(1.0, gate.phi());
  m.bright << s * std::polar(1.0, -gate.phi()), 0.0, c;
  return m;
}

GeometricFrame::GeometricFrame(const GateSpec& gate, const EnvelopeProfile& envelope)
    : modes_(dark_bright(gate)),
      envelope_(envelope),
      delta_(cumulative_trapezoid(envelope.z_grid(), envelope.omega())) {}

double GeometricFrame::delta_at(double z) const {
  const auto& zg = envelope_.z_grid();
  const auto& w = envelope_.omega();
  const std::size_t i = locate_cell(zg, z);
  const double h = zg[i + 1] - zg[i];
  const double t = z - zg[i];
  return delta_[i] + w[i] * t + 0.5 * (w[i + 1] - w[i]) * t * t / h;
}

namespace {

Vector3c phi2_from_delta(const ModePair& modes, double delta) {
  Vector3c c_unit = Vector3c::Zero();
  c_unit(idx(Mode::C)) = 1.0;
  return std::polar(1.0, delta) * (std::cos(delta) * modes.bright - kI * std::sin(delta) * c_unit);
}

}  // namespace

Vector3c GeometricFrame::phi2_at(double z) const {
  return phi2_from_delta(modes_, delta_at(z));
}

Vector3c GeometricFrame::phi2_at_sample(std::size_t k) const {
  return phi2_from_delta(modes_, delta_.at(k));
}

double holonomic_condition_residual(const CouplingProfile& profile,
                                    const GeometricFrame& frame) {
  const auto& zp = profile.z_grid();
  const auto& zf = frame.z_grid();
  if (zp.size() != zf.size()) {
    throw std::domain_error("holonomic_condition_residual: grid sizes differ");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < zp.size(); ++k) {
    if (std::abs(zp[k] - zf[k]) > 1e-12 * std::max(1.0, std::abs(zf[k]))) {
      throw std::domain_error("holonomic_condition_residual: grids do not match");
    }
    const Matrix3c h = hamiltonian_from(profile.kappa_left()[k], profile.kappa_right()[k]);
    Eigen::Matrix<Complex, 3, 2> basis;
    basis.col(0) = frame.phi1();
    basis.col(1) = frame.phi2_at_sample(k);
    const Matrix2c projected = basis.adjoint() * h * basis;
    worst = std::max(worst, projected.cwiseAbs().maxCoeff());
  }
  return worst;
}

Matrix2c anandan_connection(const GateSpec&, const EnvelopeProfile& envelope, double z) {
  Matrix2c a = Matrix2c::Zero();
  a(1, 1) = kI * envelope.at(z);
  return a;
}

Matrix2c connection_holonomy(const GateSpec& gate, const EnvelopeProfile& envelope) {
  const auto& z = envelope.z_grid();
  Matrix2c total = Matrix2c::Identity();
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    const double mid = 0.5 * (z[i] + z[i + 1]);
    // exp(A dz) written as exp(-i dz (iA)) with iA Hermitian
    const Matrix2c generator = kI * anandan_connection(gate, envelope, mid);
    total = expm_hermitian(generator, z[i + 1] - z[i]) * total;
  }
  return total;
}

Holonomy2 holonomy_from_connection(const GateSpec& gate, const EnvelopeProfile& envelope) {
  const ModePair modes = dark_bright(gate);
  Matrix2c frame;
  frame << modes.dark(idx(Mode::L)), modes.bright(idx(Mode::L)), modes.dark(idx(Mode::R)),
      modes.bright(idx(Mode::R));
  return Holonomy2(frame * connection_holonomy(gate, envelope) * frame.adjoint());
}

Holonomy2 analytic_holonomy(const GateSpec& gate) {
  const double c = std::cos(gate.theta());
  const double s = std::sin(gate.theta());
  Matrix2c u;
  u << c, -std::polar(1.0, -gate.phi()) * s, -std::polar(1.0, gate.phi()) * s, -c;
  return Holonomy2(u);
}

Unitary3 analytic_full_unitary(const GateSpec& gate) {
  const Vector3c dark = dark_bright(gate).dark;
  return Unitary3(2.0 * dark * dark.adjoint() - Matrix3c::Identity());
}

ProbabilityTable ideal_probability_table(const GateSpec& gate) {
  const Matrix2c u = analytic_holonomy(gate).matrix();
  ProbabilityTable p{};
  for (int k = 0; k < 2; ++k) {
    for (int j = 0; j < 2; ++j) p[k][j] = std::norm(u(j, k));
  }
  return p;
}

}  // namespace holo

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

#include "holo/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace holo {

std::string to_string(Integrator method) {
  return method == Integrator::rk4 ? "rk4" : "piecewise-exponential";
}

Integrator integrator_from_string(const std::string& name) {
  if (name == "rk4") return Integrator::rk4;
  if (name == "piecewise-exponential") return Integrator::piecewise_exponential;
  throw std::invalid_argument("unknown integrator '" + name + "'");
}

std::size_t resolved_step_count(const CouplingProfile& profile, const PropagationConfig& config) {
  const std::size_t minimum = kMinStepsPerPoint * profile.size();
  if (config.step_count == 0) return minimum;
  if (config.step_count < minimum) {
    throw PropagationError("step_count " + std::to_string(config.step_count) + " is below " +
                           std::to_string(minimum) + " (" + std::to_string(kMinStepsPerPoint) +
                           " per grid point for " + std::to_string(profile.size()) +
                           " points)");
  }
  return config.step_count;
}

namespace {

// dU/dz = -i H U
inline Matrix3c rhs(const Matrix3c& h, const Matrix3c& u) { return Complex(0.0, -1.0) * (h * u); }

Matrix3c rk4_cell(const Matrix3c& h0, const Matrix3c& h1, double length, std::size_t substeps,
                  Matrix3c u) {
  const double dz = length / static_cast<double>(substeps);
  const Matrix3c slope = (h1 - h0) / length;
  for (std::size_t k = 0; k < substeps; ++k) {
    const double z = dz * static_cast<double>(k);
    const Matrix3c ha = h0 + slope * z;
    const Matrix3c hm = h0 + slope * (z + 0.5 * dz);
    const Matrix3c hb = h0 + slope * (z + dz);
    const Matrix3c k1 = rhs(ha, u);
    const Matrix3c k2 = rhs(hm, u + 0.5 * dz * k1);
    const Matrix3c k3 = rhs(hm, u + 0.5 * dz * k2);
    const Matrix3c k4 = rhs(hb, u + dz * k3);
    u += (dz / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

}  // namespace

Unitary3 evolve_unitary(const CouplingProfile& profile, const PropagationConfig& config) {
  if (!profile.is_finite()) {
    throw std::domain_error("evolve_unitary: coupling profile contains non-finite values");
  }
  const std::size_t steps = resolved_step_count(profile, config);
  const auto& z = profile.z_grid();
  const double total = profile.z_end() - profile.z_begin();

  Matrix3c u = Matrix3c::Identity();
  Matrix3c h_prev = hamiltonian_from(profile.kappa_left()[0], profile.kappa_right()[0]);
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    const double length = z[i + 1] - z[i];
    const Matrix3c h_next =
        hamiltonian_from(profile.kappa_left()[i + 1], profile.kappa_right()[i + 1]);
    if (config.method == Integrator::rk4) {
      const double share = static_cast<double>(steps) * length / total;
      const auto substeps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(share)));
      u = rk4_cell(h_prev, h_next, length, substeps, u);
    } else {
      // the cell average is the exact integral of the linear interpolant
      u = expm_hermitian(Matrix3c(0.5 * (h_prev + h_next)), length) * u;
    }
    h_prev = h_next;
  }

  const double deviation = unitarity_deviation(u);
  if (!(deviation <= kPropagationUnitarityTol)) {
    throw PropagationError("evolve_unitary: unitarity deviation " + std::to_string(deviation) +
                           " exceeds " + std::to_string(kPropagationUnitarityTol) +
                           "; increase step_count");
  }
  return Unitary3(u, kPropagationUnitarityTol);
}

std::array<double, 3> single_photon_probabilities(const Unitary3& u, Mode input) {
  return {std::norm(u(Mode::L, input)), std::norm(u(Mode::C, input)),
          std::norm(u(Mode::R, input))};
}

// ---------------------------------------------------------------------------

TwoPhotonUnitary::TwoPhotonUnitary(const Matrix6c& m, double tol) : m_(m) {
  if (!(unitarity_deviation(m) <= tol)) {
    throw std::domain_error("TwoPhotonUnitary: matrix is not unitary");
  }
}

Complex permanent(const Matrix2c& m) { return m(0, 0) * m(1, 1) + m(0, 1) * m(1, 0); }

namespace {

constexpr std::array<std::pair<Mode, Mode>, kPairStates> kPairModes{{
    {Mode::L, Mode::L},
    {Mode::C, Mode::C},
    {Mode::R, Mode::R},
    {Mode::L, Mode::C},
    {Mode::L, Mode::R},
    {Mode::C, Mode::R},
}};

// product of occupation factorials: 2 for a doubly occupied mode, else 1
double occupation_factor(const std::pair<Mode, Mode>& p) { return p.first == p.second ? 2.0 : 1.0; }

}  // namespace

TwoPhotonUnitary lift_two_photon(const Unitary3& u) {
  Matrix6c lifted;
  for (int out = 0; out < kPairStates; ++out) {
    for (int in = 0; in < kPairStates; ++in) {
      const auto& t = kPairModes[out];
      const auto& s = kPairModes[in];
      Matrix2c sub;
      sub << u(t.first, s.first), u(t.first, s.second), u(t.second, s.first),
          u(t.second, s.second);
      lifted(out, in) = permanent(sub) / std::sqrt(occupation_factor(t) * occupation_factor(s));
    }
  }
  return TwoPhotonUnitary(lifted);
}

double hom_coincidence(const Unitary3& u, double indistinguishability) {
  const double q = indistinguishability;
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::domain_error("hom_coincidence: indistinguishability must lie in [0, 1]");
  }
  const Matrix2c s = u.logical_block();
  const double quantum = std::norm(permanent(s));
  const double classical = std::norm(s(0, 0) * s(1, 1)) + std::norm(s(0, 1) * s(1, 0));
  return q * quantum + (1.0 - q) * classical;
}

double hom_visibility(const Unitary3& u) {
  const double classical = hom_coincidence(u, 0.0);
  if (!(classical > 0.0)) {
    throw UndefinedVisibilityError("hom_visibility: classical coincidence is zero");
  }
  return (classical - hom_coincidence(u, 1.0)) / classical;
}

}  // namespace holo

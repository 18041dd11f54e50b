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
#include <cstddef>
#include <string>

#include "holo/core.hpp"

namespace holo {

enum class Integrator { rk4, piecewise_exponential };

std::string to_string(Integrator method);
/// "rk4" or "piecewise-exponential"; throws std::invalid_argument otherwise.
Integrator integrator_from_string(const std::string& name);

/// Minimum integration steps per grid point.
inline constexpr std::size_t kMinStepsPerPoint = 10;
/// Propagated unitaries deviating more than this from unitarity are rejected.
inline constexpr double kPropagationUnitarityTol = 1e-8;

struct PropagationConfig {
  /// Total integration steps; 0 picks kMinStepsPerPoint * grid points.
  std::size_t step_count = 0;
  Integrator method = Integrator::rk4;
};

/// Step count that evolve_unitary will use for this profile. Throws
/// PropagationError if an explicit count is below the minimum.
std::size_t resolved_step_count(const CouplingProfile& profile, const PropagationConfig& config);

/**
 * Solves i dU/dz = H(z) U with U(z_begin) = 1 and returns U(z_end).
 *
 * Steps are distributed over grid cells in proportion to cell length (at
 * least one per cell) so every step sees a linear H. The rk4 back-end
 * integrates the interpolated H; piecewise-exponential multiplies
 * exp(-i h H_avg) per cell, which is exact whenever H(z) commutes with itself
 * along z.
 *
 * Throws std::domain_error for non-finite couplings and PropagationError for
 * too few steps or a result further than kPropagationUnitarityTol from
 * unitary.
 */
Unitary3 evolve_unitary(const CouplingProfile& profile, const PropagationConfig& config = {});

/// |U(v, input)|^2 for v = L, C, R.
std::array<double, 3> single_photon_probabilities(const Unitary3& u, Mode input);

// ---------------------------------------------------------------------------
// Two photons
// ---------------------------------------------------------------------------

/// Symmetric two-photon basis order.
enum class PairState : int { LL = 0, CC = 1, RR = 2, LC = 3, LR = 4, CR = 5 };

inline constexpr int kPairStates = 6;
using Matrix6c = Eigen::Matrix<Complex, kPairStates, kPairStates>;

class TwoPhotonUnitary {
 public:
  explicit TwoPhotonUnitary(const Matrix6c& m, double tol = kUnitarityTol);

  const Matrix6c& matrix() const { return m_; }
  Complex operator()(PairState out, PairState in) const {
    return m_(static_cast<int>(out), static_cast<int>(in));
  }

 private:
  Matrix6c m_;
};

Complex permanent(const Matrix2c& m);

/// Amplitude <t|U|s> = perm(U[t, s]) / sqrt(prod n_t! prod n_s!).
TwoPhotonUnitary lift_two_photon(const Unitary3& u);

/// q |perm S|^2 + (1 - q)(|S00 S11|^2 + |S01 S10|^2) with S the (L, R) block:
/// coincidence probability for one photon in L and one in R at both ends,
/// q the indistinguishability. Throws std::domain_error for q outside [0, 1].
double hom_coincidence(const Unitary3& u, double indistinguishability);

/// (P(0) - P(1)) / P(0). Throws UndefinedVisibilityError when P(0) == 0.
double hom_visibility(const Unitary3& u);

}  // namespace holo

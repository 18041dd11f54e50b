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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "holo/envelopes.hpp"
#include "holo/holonomy.hpp"
#include "holo/propagate.hpp"
#include "oracles.hpp"

namespace holo {
namespace {

std::vector<GateSpec> random_gates(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::vector<GateSpec> gates;
  for (int i = 0; i < count; ++i) gates.emplace_back(angle(rng), angle(rng));
  return gates;
}

TEST(DarkBrightTest, DarkModeIsAnnihilated) {
  for (const auto& g : random_gates(50, 1)) {
    const ModePair m = dark_bright(g);
    const double omega = 1.7;
    const Matrix3c h = hamiltonian_from(omega * std::sin(0.5 * g.theta()) * std::polar(1.0, g.phi()),
                                        omega * std::cos(0.5 * g.theta()));
    EXPECT_LT((h * m.dark).norm(), 1e-14);
    Vector3c c = Vector3c::Zero();
    c(1) = 1.0;
    EXPECT_LT((h * m.bright - omega * c).norm(), 1e-14);
    EXPECT_NEAR(m.dark.norm(), 1.0, 1e-15);
    EXPECT_NEAR(m.bright.norm(), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(m.dark.dot(m.bright)), 0.0, 1e-15);
    EXPECT_EQ(m.dark(1), Complex(0.0));
  }
}

TEST(AnalyticHolonomyTest, MatchesClosedForm) {
  for (const auto& g : random_gates(50, 2)) {
    EXPECT_LT(oracle::max_abs_diff(analytic_holonomy(g).matrix(), oracle::gate(g.theta(), g.phi())),
              1e-15);
    EXPECT_LT(oracle::max_abs_diff(analytic_full_unitary(g).matrix(),
                                   oracle::full_gate(g.theta(), g.phi())),
              1e-14);
  }
}

TEST(AnalyticHolonomyTest, NamedGates) {
  const Matrix2c h = analytic_holonomy(GateSpec::hadamard()).matrix();
  const double r = 1.0 / std::sqrt(2.0);
  Matrix2c neg_h;
  neg_h << -r, -r, -r, r;
  EXPECT_LT(oracle::max_abs_diff(h, neg_h), 1e-15);

  Matrix3c x_full;
  x_full << 0, 0, -1, 0, -1, 0, -1, 0, 0;
  EXPECT_LT(oracle::max_abs_diff(analytic_full_unitary(GateSpec::pauli_x()).matrix(), x_full),
            1e-15);

  Matrix2c z;
  z << 1, 0, 0, -1;
  EXPECT_LT(oracle::max_abs_diff(analytic_holonomy(GateSpec(0.0)).matrix(), z), 1e-15);
}

TEST(AnalyticHolonomyTest, GatesAreInvolutions) {
  for (const auto& g : random_gates(30, 3)) {
    const Matrix2c u = analytic_holonomy(g).matrix();
    EXPECT_LT(oracle::max_abs_diff(Matrix2c(u * u), Matrix2c::Identity()), 1e-14);
  }
}

TEST(AnalyticHolonomyTest, IdealTableOrientation) {
  const ProbabilityTable p = ideal_probability_table(GateSpec(0.6, 1.0));
  EXPECT_NEAR(p[0][0], std::cos(0.6) * std::cos(0.6), 1e-15);
  EXPECT_NEAR(p[0][1], std::sin(0.6) * std::sin(0.6), 1e-15);
  EXPECT_NEAR(p[0][0] + p[0][1], 1.0, 1e-15);
  EXPECT_NEAR(p[1][0] + p[1][1], 1.0, 1e-15);
}

TEST(GeometricFrameTest, DeltaIsCumulativeArea) {
  const EnvelopeProfile env = build_envelope(EnvelopeShape::full_cosine(2.0, 500.0));
  const GeometricFrame frame(GateSpec::hadamard(), env);
  EXPECT_NEAR(frame.delta_at(0.0), 0.0, 1e-15);
  EXPECT_NEAR(frame.delta_at(2.0), kPi, 1e-12);
  EXPECT_NEAR(frame.delta_at(1.0), 0.5 * kPi, 1e-6);
}

TEST(GeometricFrameTest, Phi2StartsAndEndsOnBrightMode) {
  const GateSpec g(1.3, 0.8);
  const EnvelopeProfile env = build_envelope(EnvelopeShape::sandwich(2.0, 0.5, 1.0));
  const GeometricFrame frame(g, env);
  const Vector3c b = dark_bright(g).bright;
  EXPECT_LT((frame.phi2_at(0.0) - b).norm(), 1e-14);
  // e^{i pi} cos(pi) b = b
  EXPECT_LT((frame.phi2_at(2.0) - b).norm(), 1e-11);
  EXPECT_NEAR(std::abs(frame.phi2_at(1.0)(1)), 1.0, 1e-6);
}

TEST(GeometricFrameTest, Phi2FollowsPropagatedBrightMode) {
  const GateSpec g(2.0, 0.3);
  const EnvelopeProfile env = build_envelope(EnvelopeShape::full_cosine(1.0, 400.0));
  const GeometricFrame frame(g, env);
  const Vector3c b = dark_bright(g).bright;
  for (double zf : {0.25, 0.5, 0.8}) {
    const std::size_t k = static_cast<std::size_t>(zf * 400.0 + 0.5);
    const std::vector<double> z(env.z_grid().begin(), env.z_grid().begin() + k + 1);
    const std::vector<double> w(env.omega().begin(), env.omega().begin() + k + 1);
    const Unitary3 u =
        evolve_unitary(CouplingProfile::from_gate(g, EnvelopeProfile(z, w)), {0, Integrator::piecewise_exponential});
    const Vector3c propagated = u.matrix() * b;
    // the frame vector equals the propagated state up to the phase e^{2 i delta}
    const double overlap = std::abs(frame.phi2_at_sample(k).dot(propagated));
    EXPECT_NEAR(overlap, 1.0, 1e-10);
  }
}

TEST(HolonomicConditionTest, ProjectedHamiltonianVanishes) {
  for (const auto& shape : builtin_shapes(2.0, 200.0)) {
    const GateSpec g(0.9, 2.1);
    const EnvelopeProfile env = build_envelope(shape);
    const GeometricFrame frame(g, env);
    EXPECT_LT(holonomic_condition_residual(CouplingProfile::from_gate(g, env), frame), 1e-12)
        << shape.name();
  }
}

TEST(HolonomicConditionTest, GridMismatchRejected) {
  const GateSpec g(0.9);
  const EnvelopeProfile a = build_envelope(EnvelopeShape::constant(1.0, 10.0));
  const EnvelopeProfile b = build_envelope(EnvelopeShape::constant(1.0, 20.0));
  EXPECT_THROW(holonomic_condition_residual(CouplingProfile::from_gate(g, a), GeometricFrame(g, b)),
               std::domain_error);
}

TEST(HolonomicConditionTest, WrongWeightsBreakCondition) {
  const GateSpec g(0.9);
  const EnvelopeProfile env = build_envelope(EnvelopeShape::constant(1.0, 10.0));
  const GeometricFrame frame(g, env);
  const auto wrong = CouplingProfile::from_gate(GateSpec(1.4), env);
  EXPECT_GT(holonomic_condition_residual(wrong, frame), 1e-3);
}

TEST(ConnectionTest, DiagonalWithBrightEntry) {
  const EnvelopeProfile env = build_envelope(EnvelopeShape::full_cosine(2.0));
  const Matrix2c a = anandan_connection(GateSpec::hadamard(), env, 0.7);
  EXPECT_EQ(a(0, 0), Complex(0.0));
  EXPECT_EQ(a(0, 1), Complex(0.0));
  EXPECT_EQ(a(1, 0), Complex(0.0));
  EXPECT_NEAR(std::abs(a(1, 1) - Complex(0.0, env.at(0.7))), 0.0, 1e-15);
}

TEST(ConnectionTest, PathOrderedExponentialIsDiagPlusMinus) {
  const EnvelopeProfile env = build_envelope(EnvelopeShape::raised_gaussian(2.0, 0.4));
  const Matrix2c m = connection_holonomy(GateSpec::hadamard(), env);
  Matrix2c expected;
  expected << 1, 0, 0, -1;
  EXPECT_LT(oracle::max_abs_diff(m, expected), 1e-12);
}

TEST(ConnectionTest, HolonomyFromConnectionMatchesAnalytic) {
  for (const auto& g : random_gates(20, 4)) {
    const EnvelopeProfile env = build_envelope(EnvelopeShape::full_cosine(1.0, 100.0));
    EXPECT_LT(oracle::max_abs_diff(holonomy_from_connection(g, env).matrix(),
                                   analytic_holonomy(g).matrix()),
              1e-12);
  }
}

}  // namespace
}  // namespace holo

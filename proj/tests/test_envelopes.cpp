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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "holo/envelopes.hpp"

namespace holo {
namespace {

TEST(EnvelopeShapeTest, BuiltinsAreCyclicAndNonNegative) {
  for (const auto& shape : builtin_shapes(2.0)) {
    SCOPED_TRACE(shape.name());
    const EnvelopeProfile p = build_envelope(shape);
    EXPECT_NEAR(p.integral(), kPi, 1e-12);
    EXPECT_TRUE(p.is_cyclic());
    EXPECT_DOUBLE_EQ(p.z_begin(), 0.0);
    EXPECT_DOUBLE_EQ(p.z_end(), 2.0);
    EXPECT_EQ(p.size(), 2001u);
    EXPECT_GE(*std::min_element(p.omega().begin(), p.omega().end()), 0.0);
  }
}

TEST(EnvelopeShapeTest, Names) {
  const auto shapes = builtin_shapes(1.0);
  ASSERT_EQ(shapes.size(), 4u);
  EXPECT_EQ(shapes[0].name(), "constant");
  EXPECT_EQ(shapes[1].name(), "full-cosine");
  EXPECT_EQ(shapes[2].name(), "sandwich");
  EXPECT_EQ(shapes[3].name(), "raised-gaussian");
}

TEST(EnvelopeShapeTest, ConstantValue) {
  const EnvelopeProfile p = build_envelope(EnvelopeShape::constant(4.0, 100.0));
  for (double w : p.omega()) EXPECT_NEAR(w, kPi / 4.0, 1e-14);
}

TEST(EnvelopeShapeTest, FullCosineVanishesAtEnds) {
  const EnvelopeProfile p = build_envelope(EnvelopeShape::full_cosine(2.0));
  EXPECT_NEAR(p.omega().front(), 0.0, 1e-14);
  EXPECT_NEAR(p.omega().back(), 0.0, 1e-14);
  // peak of pi/L (1 - cos) is 2 pi / L at the centre
  EXPECT_NEAR(p.at(1.0), kPi, 1e-9);
}

TEST(EnvelopeShapeTest, SandwichHasFlatTop) {
  const EnvelopeProfile p = build_envelope(EnvelopeShape::sandwich(4.0, 1.0, 2.0));
  EXPECT_NEAR(p.omega().front(), 0.0, 1e-14);
  EXPECT_NEAR(p.omega().back(), 0.0, 1e-14);
  const double top = p.at(2.0);
  EXPECT_NEAR(p.at(1.2), top, 1e-12);
  EXPECT_NEAR(p.at(2.8), top, 1e-12);
  // cosine ramps: area = flat * top + 2 * ramp * top / 2
  EXPECT_NEAR(top * (2.0 + 1.0), kPi, 1e-6);
}

TEST(EnvelopeShapeTest, SandwichRejectsOverlongParts) {
  EXPECT_THROW(EnvelopeShape::sandwich(2.0, 1.0, 0.5), std::domain_error);
  EXPECT_THROW(EnvelopeShape::sandwich(2.0, -0.1, 0.5), std::domain_error);
  EXPECT_NO_THROW(EnvelopeShape::sandwich(2.0, 0.5, 0.5));
}

TEST(EnvelopeShapeTest, RaisedGaussianTouchesZeroAtEnds) {
  const EnvelopeProfile p = build_envelope(EnvelopeShape::raised_gaussian(3.0, 0.5));
  EXPECT_NEAR(p.omega().front(), 0.0, 1e-14);
  EXPECT_NEAR(p.omega().back(), 0.0, 1e-14);
  EXPECT_THROW(EnvelopeShape::raised_gaussian(3.0, 0.0), std::domain_error);
}

TEST(EnvelopeShapeTest, ShapeByName) {
  EXPECT_EQ(shape_by_name("sandwich", 2.0).name(), "sandwich");
  EXPECT_EQ(shape_by_name("raised-gaussian", 2.0, 100.0, {}, {}, 0.2).name(), "raised-gaussian");
  EXPECT_THROW(shape_by_name("triangle", 2.0), std::invalid_argument);
}

TEST(EnvelopeShapeTest, InvalidLengths) {
  EXPECT_THROW(EnvelopeShape::constant(0.0), std::domain_error);
  EXPECT_THROW(EnvelopeShape::constant(1.0, 0.0), std::domain_error);
}

TEST(EnvelopeShapeTest, ZeroCustomShapeCannotBeNormalized) {
  const EnvelopeProfile zero({0.0, 1.0, 2.0}, {0.0, 0.0, 0.0});
  EXPECT_THROW(build_envelope(EnvelopeShape::custom(zero)), NormalizationError);
}

TEST(EnvelopeShapeTest, CustomShapeIsRescaled) {
  const EnvelopeProfile raw({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
  const EnvelopeProfile p = build_envelope(EnvelopeShape::custom(raw));
  EXPECT_NEAR(p.integral(), kPi, 1e-14);
  EXPECT_NEAR(p.omega()[1], kPi, 1e-14);
}

TEST(CyclicityTest, ResidualIsSigned) {
  const EnvelopeProfile p = build_envelope(EnvelopeShape::constant(1.0));
  const auto c = check_cyclicity(scale_to_cyclicity_error(p, 0.1));
  EXPECT_NEAR(c.delta_final, kPi + 0.1, 1e-12);
  EXPECT_NEAR(c.residual, 0.1, 1e-12);
  EXPECT_NEAR(check_cyclicity(scale_to_cyclicity_error(p, -0.2)).residual, -0.2, 1e-12);
}

TEST(CyclicityTest, ScalingEdgeCases) {
  const EnvelopeProfile p = build_envelope(EnvelopeShape::full_cosine(1.0));
  EXPECT_TRUE(scale_to_cyclicity_error(p, -kPi).is_degenerate());
  EXPECT_THROW(scale_to_cyclicity_error(p, -kPi - 0.1), std::domain_error);
  const EnvelopeProfile off = scale_to_cyclicity_error(p, 0.3);
  EXPECT_THROW(scale_to_cyclicity_error(off, 0.1), std::domain_error);
}

TEST(ReparametrizeTest, PreservesIntegralAndGrid) {
  const EnvelopeProfile p = build_envelope(EnvelopeShape::full_cosine(2.0));
  const EnvelopeProfile w = reparametrize(p, [](double s) { return s * s * (3.0 - 2.0 * s); });
  EXPECT_EQ(w.z_grid(), p.z_grid());
  EXPECT_NEAR(w.integral(), p.integral(), 1e-12);
}

TEST(ReparametrizeTest, IdentityWarpIsNoOp) {
  const EnvelopeProfile p = build_envelope(EnvelopeShape::sandwich(2.0, 0.5, 1.0, 200.0));
  const EnvelopeProfile w = reparametrize(p, [](double s) { return s; });
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(w.omega()[i], p.omega()[i], 1e-10);
}

TEST(ReparametrizeTest, RejectsBadWarps) {
  const EnvelopeProfile p = build_envelope(EnvelopeShape::constant(1.0, 50.0));
  EXPECT_THROW(reparametrize(p, [](double s) { return 1.0 - s; }), std::domain_error);
  EXPECT_THROW(reparametrize(p, [](double s) { return 0.5 * s; }), std::domain_error);
  EXPECT_THROW(reparametrize(p, [](double s) { return s < 0.5 ? s : 0.5; }), std::domain_error);
}

TEST(EnvelopeCsvTest, RoundTrip) {
  std::istringstream in("z_cm,omega_per_cm\n0,0\n0.5,1\n1,0\n");
  const EnvelopeProfile p = read_envelope_csv(in);
  EXPECT_EQ(p.size(), 3u);
  EXPECT_DOUBLE_EQ(p.integral(), 0.5);
}

TEST(EnvelopeCsvTest, WrongHeaderRejected) {
  std::istringstream in("z,omega\n0,0\n1,0\n");
  EXPECT_THROW(read_envelope_csv(in), std::invalid_argument);
}

}  // namespace
}  // namespace holo

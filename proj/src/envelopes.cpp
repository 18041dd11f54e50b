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

#include "holo/envelopes.hpp"

#include <algorithm>
#include <cmath>

#include "holo/io.hpp"

namespace holo {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t cell_count(double length, double samples_per_cm) {
  const double cells = std::ceil(length * samples_per_cm - 1e-9);
  return std::max<std::size_t>(1, static_cast<std::size_t>(cells));
}

double sandwich_value(const SandwichShape& s, double total, double z) {
  const double margin = 0.5 * (total - 2.0 * s.ramp_length - s.flat_length);
  const double up_end = margin + s.ramp_length;
  const double flat_end = up_end + s.flat_length;
  const double down_end = flat_end + s.ramp_length;
  if (z < margin || z > down_end) return 0.0;
  if (z < up_end) return 0.5 * (1.0 - std::cos(kPi * (z - margin) / s.ramp_length));
  if (z <= flat_end) return 1.0;
  return 0.5 * (1.0 + std::cos(kPi * (z - flat_end) / s.ramp_length));
}

EnvelopeProfile normalize_to_pi(std::vector<double> z, std::vector<double> omega) {
  const double area = trapezoid(z, omega);
  if (!(area > 0.0) || !std::isfinite(area)) {
    throw NormalizationError("envelope is identically zero; cannot normalize to pi");
  }
  const double scale = kPi / area;
  for (double& w : omega) w *= scale;
  return EnvelopeProfile(std::move(z), std::move(omega));
}

}  // namespace

EnvelopeShape::EnvelopeShape(ShapeKind kind, double total_length, double samples_per_cm)
    : kind_(std::move(kind)), total_length_(total_length), samples_per_cm_(samples_per_cm) {
  if (!(total_length_ > 0.0) || !std::isfinite(total_length_)) {
    throw std::domain_error("EnvelopeShape: total_length must be positive");
  }
  if (!(samples_per_cm_ > 0.0) || !std::isfinite(samples_per_cm_)) {
    throw std::domain_error("EnvelopeShape: samples_per_cm must be positive");
  }
}

EnvelopeShape EnvelopeShape::constant(double total_length, double samples_per_cm) {
  return EnvelopeShape(ConstantShape{}, total_length, samples_per_cm);
}

EnvelopeShape EnvelopeShape::full_cosine(double total_length, double samples_per_cm) {
  return EnvelopeShape(FullCosineShape{}, total_length, samples_per_cm);
}

EnvelopeShape EnvelopeShape::sandwich(double total_length, double ramp_length,
                                      double flat_length, double samples_per_cm) {
  if (!(ramp_length >= 0.0) || !(flat_length >= 0.0)) {
    throw std::domain_error("sandwich: ramp and flat lengths must be non-negative");
  }
  if (2.0 * ramp_length + flat_length > total_length * (1.0 + 1e-12)) {
    throw std::domain_error("sandwich: 2*ramp + flat exceeds total length");
  }
  return EnvelopeShape(SandwichShape{ramp_length, flat_length}, total_length, samples_per_cm);
}

EnvelopeShape EnvelopeShape::raised_gaussian(double total_length, double width,
                                             double samples_per_cm) {
  if (!(width > 0.0)) throw std::domain_error("raised-gaussian: width must be positive");
  return EnvelopeShape(RaisedGaussianShape{width}, total_length, samples_per_cm);
}

EnvelopeShape EnvelopeShape::custom(const EnvelopeProfile& samples) {
  const double spc = static_cast<double>(samples.size() - 1) / samples.length();
  return EnvelopeShape(CustomShape{samples.z_grid(), samples.omega()}, samples.length(), spc);
}

std::string EnvelopeShape::name() const {
  return std::visit(overloaded{
                        [](const ConstantShape&) { return std::string("constant"); },
                        [](const FullCosineShape&) { return std::string("full-cosine"); },
                        [](const SandwichShape&) { return std::string("sandwich"); },
                        [](const RaisedGaussianShape&) { return std::string("raised-gaussian"); },
                        [](const CustomShape&) { return std::string("custom"); },
                    },
                    kind_);
}

std::vector<EnvelopeShape> builtin_shapes(double total_length, double samples_per_cm) {
  return {EnvelopeShape::constant(total_length, samples_per_cm),
          EnvelopeShape::full_cosine(total_length, samples_per_cm),
          EnvelopeShape::sandwich(total_length, 0.25 * total_length, 0.5 * total_length,
                                  samples_per_cm),
          EnvelopeShape::raised_gaussian(total_length, total_length / 6.0, samples_per_cm)};
}

EnvelopeShape shape_by_name(const std::string& name, double total_length, double samples_per_cm,
                            std::optional<double> ramp_length, std::optional<double> flat_length,
                            std::optional<double> width) {
  if (name == "constant") return EnvelopeShape::constant(total_length, samples_per_cm);
  if (name == "full-cosine") return EnvelopeShape::full_cosine(total_length, samples_per_cm);
  if (name == "sandwich") {
    const double ramp = ramp_length.value_or(0.25 * total_length);
    const double flat = flat_length.value_or(total_length - 2.0 * ramp);
    return EnvelopeShape::sandwich(total_length, ramp, flat, samples_per_cm);
  }
  if (name == "raised-gaussian") {
    return EnvelopeShape::raised_gaussian(total_length, width.value_or(total_length / 6.0),
                                          samples_per_cm);
  }
  throw std::invalid_argument("unknown envelope shape '" + name + "'");
}

EnvelopeProfile build_envelope(const EnvelopeShape& shape) {
  if (const auto* custom = std::get_if<CustomShape>(&shape.kind())) {
    return normalize_to_pi(custom->z_grid, custom->omega);
  }
  const double length = shape.total_length();
  std::vector<double> z = uniform_grid(0.0, length, cell_count(length, shape.samples_per_cm()));
  std::vector<double> omega(z.size());
  const auto value = overloaded{
      [](const ConstantShape&, double) { return 1.0; },
      [length](const FullCosineShape&, double x) {
        return 1.0 - std::cos(kTwoPi * x / length);
      },
      [length](const SandwichShape& s, double x) { return sandwich_value(s, length, x); },
      [length](const RaisedGaussianShape& g, double x) {
        const double c = 0.5 * length;
        const double floor = std::exp(-c * c / (2.0 * g.width * g.width));
        const double v = std::exp(-(x - c) * (x - c) / (2.0 * g.width * g.width)) - floor;
        return std::max(0.0, v);
      },
      [](const CustomShape&, double) { return 0.0; },
  };
  for (std::size_t i = 0; i < z.size(); ++i) {
    omega[i] = std::visit([&](const auto& k) { return value(k, z[i]); }, shape.kind());
  }
  return normalize_to_pi(std::move(z), std::move(omega));
}

CyclicityCheck check_cyclicity(const EnvelopeProfile& profile) {
  const double delta = profile.integral();
  return {delta, delta - kPi};
}

namespace {

// Three-point derivative on a non-uniform grid; exact for quadratics.
std::vector<double> finite_difference(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n);
  if (n == 2) {
    d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
    return d;
  }
  {
    const double h1 = x[1] - x[0], h2 = x[2] - x[1];
    d[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * y[0] + (h1 + h2) / (h1 * h2) * y[1] -
           h1 / (h2 * (h1 + h2)) * y[2];
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = x[i] - x[i - 1], h2 = x[i + 1] - x[i];
    d[i] = -h2 / (h1 * (h1 + h2)) * y[i - 1] + (h2 - h1) / (h1 * h2) * y[i] +
           h1 / (h2 * (h1 + h2)) * y[i + 1];
  }
  {
    const double h1 = x[n - 2] - x[n - 3], h2 = x[n - 1] - x[n - 2];
    d[n - 1] = h2 / (h1 * (h1 + h2)) * y[n - 3] - (h1 + h2) / (h1 * h2) * y[n - 2] +
               (h1 + 2.0 * h2) / (h2 * (h1 + h2)) * y[n - 1];
  }
  return d;
}

}  // namespace

EnvelopeProfile reparametrize(const EnvelopeProfile& profile, const Warp& warp) {
  const auto& z = profile.z_grid();
  const double z0 = profile.z_begin();
  const double length = profile.length();
  const std::size_t n = z.size();

  std::vector<double> s(n), g(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = (z[i] - z0) / length;
    g[i] = warp(s[i]);
    if (!std::isfinite(g[i])) throw std::domain_error("reparametrize: warp is not finite");
    if (i > 0 && !(g[i] > g[i - 1])) {
      throw std::domain_error("reparametrize: warp must be strictly increasing");
    }
  }
  if (std::abs(g.front()) > 1e-12 || std::abs(g.back() - 1.0) > 1e-12) {
    throw std::domain_error("reparametrize: warp must map 0 to 0 and 1 to 1");
  }
  g.front() = 0.0;
  g.back() = 1.0;

  const std::vector<double> slope = finite_difference(s, g);
  std::vector<double> omega(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (slope[i] < 0.0) throw std::domain_error("reparametrize: warp derivative is negative");
    omega[i] = profile.at(z0 + length * g[i]) * slope[i];
  }

  const double target = profile.integral();
  const double area = trapezoid(z, omega);
  if (area > 0.0) {
    const double scale = target / area;
    for (double& w : omega) w *= scale;
  }
  return EnvelopeProfile(z, std::move(omega));
}

EnvelopeProfile scale_to_cyclicity_error(const EnvelopeProfile& profile, double epsilon) {
  if (!profile.is_cyclic()) {
    throw std::domain_error("scale_to_cyclicity_error: input profile is not cyclic");
  }
  const double factor = (kPi + epsilon) / kPi;
  if (!(factor >= 0.0)) {
    throw std::domain_error("scale_to_cyclicity_error: epsilon below -pi gives negative omega");
  }
  std::vector<double> omega = profile.omega();
  for (double& w : omega) w *= factor;
  return EnvelopeProfile(profile.z_grid(), std::move(omega));
}

EnvelopeProfile read_envelope_csv(std::istream& in) {
  const auto rows = io::read_numeric_csv(in, {"z_cm", "omega_per_cm"});
  std::vector<double> z, omega;
  for (const auto& r : rows) {
    z.push_back(r[0]);
    omega.push_back(r[1]);
  }
  return EnvelopeProfile(std::move(z), std::move(omega));
}

}  // namespace holo

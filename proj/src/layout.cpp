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

#include "holo/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "holo/io.hpp"
#include "json.hpp"

namespace holo {

CouplingFit make_coupling_fit(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("coupling fit requires a > 0 and b > 0");
  }
  return CouplingFit{a, b, 0.0};
}

CouplingFit fit_coupling_curve(std::span<const ScanPoint> points) {
  std::set<double> distinct;
  for (const auto& p : points) {
    if (!(p.kappa_per_cm > 0.0) || !std::isfinite(p.kappa_per_cm)) {
      throw std::domain_error("coupling scan: kappa must be positive");
    }
    if (!(p.delta_um >= 0.0) || !std::isfinite(p.delta_um)) {
      throw std::domain_error("coupling scan: separation must be non-negative");
    }
    distinct.insert(p.delta_um);
  }
  if (distinct.size() < 2) {
    throw UnderdeterminedError("coupling scan needs at least two distinct separations");
  }

  const double n = static_cast<double>(points.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& p : points) {
    mean_x += p.delta_um;
    mean_y += std::log(p.kappa_per_cm);
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : points) {
    const double dx = p.delta_um - mean_x;
    sxx += dx * dx;
    sxy += dx * (std::log(p.kappa_per_cm) - mean_y);
  }
  const double slope = sxy / sxx;
  const double intercept = mean_y - slope * mean_x;

  double rss = 0.0;
  for (const auto& p : points) {
    const double r = std::log(p.kappa_per_cm) - (intercept + slope * p.delta_um);
    rss += r * r;
  }
  if (!(slope < 0.0)) {
    throw std::domain_error("coupling scan: fitted coupling does not decay with separation");
  }
  CouplingFit fit = make_coupling_fit(std::exp(intercept), -slope);
  fit.residual_norm = std::sqrt(rss);
  return fit;
}

std::vector<ScanPoint> read_scan_csv(std::istream& in) {
  std::vector<ScanPoint> points;
  for (const auto& row : io::read_numeric_csv(in, {"delta_um", "kappa_per_cm"})) {
    points.push_back({row[0], row[1]});
  }
  return points;
}

double distance_from_coupling(double kappa, const CouplingFit& fit) {
  if (!(kappa > 0.0)) throw std::domain_error("distance_from_coupling: kappa must be positive");
  if (kappa > fit.a) {
    throw std::domain_error("distance_from_coupling: kappa " + io::format_number(kappa) +
                            " exceeds the fit prefactor a = " + io::format_number(fit.a));
  }
  return -std::log(kappa / fit.a) / fit.b;
}

double coupling_from_distance(double delta_um, const CouplingFit& fit) {
  return fit.a * std::exp(-fit.b * delta_um);
}

std::string to_string(Segment s) {
  switch (s) {
    case Segment::gate:
      return "gate";
    case Segment::fanning:
      return "fanning";
    case Segment::decoupled:
      return "decoupled";
  }
  return "?";
}

Segment segment_from_string(const std::string& name) {
  if (name == "gate") return Segment::gate;
  if (name == "fanning") return Segment::fanning;
  if (name == "decoupled") return Segment::decoupled;
  throw std::invalid_argument("unknown segment label '" + name + "'");
}

void validate_layout(const ChipLayout& layout) {
  const std::size_t n = layout.z_mm.size();
  if (layout.x_left_um.size() != n || layout.x_center_um.size() != n ||
      layout.x_right_um.size() != n || layout.segments.size() != n || layout.flags.size() != n) {
    throw std::domain_error("layout: column sizes differ");
  }
  if (n == 0) throw std::domain_error("layout is empty");
  validate_grid(layout.z_mm, "layout");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(layout.x_left_um[i] < layout.x_center_um[i] &&
          layout.x_center_um[i] < layout.x_right_um[i])) {
      throw std::domain_error("layout: waveguides cross at z = " +
                              io::format_number(layout.z_mm[i]) + " mm");
    }
  }
}

namespace {

struct Separation {
  double value;
  bool clamped;
};

Separation separation_for(Complex kappa, const CouplingFit& fit, const LayoutOptions& opt) {
  const double scale = std::max(1.0, std::abs(kappa));
  if (std::abs(kappa.imag()) > 1e-12 * scale || kappa.real() < -1e-12 * scale) {
    throw UnsupportedGeometryError(
        "layout needs real non-negative couplings; complex phases are simulation-only");
  }
  const double k = kappa.real();
  const double target = opt.decoupled_separation_um;
  const double w = opt.blend_width_um;
  const double raw = k > 0.0 ? distance_from_coupling(k, fit)
                             : std::numeric_limits<double>::infinity();
  if (raw <= 0.0) {
    throw std::domain_error("layout: coupling equals the fit prefactor; waveguides would overlap");
  }
  if (w <= 0.0) return raw >= target ? Separation{target, true} : Separation{raw, false};

  const double lo = target - w;
  if (raw <= lo) return {raw, false};
  if (raw >= target + w) return {target, true};
  // slope eases from 1 to 0 along a half cosine over [lo, target + w]
  const double t = (raw - lo) / (2.0 * w);
  return {lo + w * (t + std::sin(kPi * t) / kPi), true};
}

}  // namespace

ChipLayout trajectories_from_profile(const CouplingProfile& profile, const CouplingFit& fit,
                                     const LayoutOptions& options,
                                     std::span<const Segment> segments) {
  if (!(options.decoupled_separation_um - options.blend_width_um > 0.0) ||
      options.blend_width_um < 0.0) {
    throw std::domain_error("layout options: need decoupled_separation > blend_width >= 0");
  }
  if (!segments.empty() && segments.size() != profile.size()) {
    throw std::domain_error("layout: segment labels do not match the profile grid");
  }
  ChipLayout out;
  const std::size_t n = profile.size();
  out.z_mm.resize(n);
  out.x_left_um.resize(n);
  out.x_center_um.assign(n, 0.0);
  out.x_right_um.resize(n);
  out.segments.resize(n);
  out.flags.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Separation left = separation_for(profile.kappa_left()[i], fit, options);
    const Separation right = separation_for(profile.kappa_right()[i], fit, options);
    out.z_mm[i] = 10.0 * profile.z_grid()[i];
    out.x_left_um[i] = -left.value;
    out.x_right_um[i] = right.value;
    out.segments[i] = segments.empty() ? Segment::gate : segments[i];
    if (left.clamped || right.clamped) out.flags[i] |= layout_flags::kClamped;
    if (std::min(left.value, right.value) < options.min_separation_um) {
      out.flags[i] |= layout_flags::kBelowMinSeparation;
    }
  }
  return out;
}

CouplingProfile profile_from_layout(const ChipLayout& layout, const CouplingFit& fit) {
  validate_layout(layout);
  std::vector<double> z(layout.size());
  std::vector<Complex> kl(layout.size()), kr(layout.size());
  for (std::size_t i = 0; i < layout.size(); ++i) {
    z[i] = 0.1 * layout.z_mm[i];
    kl[i] = coupling_from_distance(layout.x_center_um[i] - layout.x_left_um[i], fit);
    kr[i] = coupling_from_distance(layout.x_right_um[i] - layout.x_center_um[i], fit);
  }
  return CouplingProfile(std::move(z), std::move(kl), std::move(kr));
}

// ---------------------------------------------------------------------------

namespace {

double cosine_ramp(double from, double to, double u) {
  return from + (to - from) * 0.5 * (1.0 - std::cos(kPi * u));
}

std::size_t fan_cells(double fan_length_mm, double step_mm) {
  return std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(fan_length_mm / step_mm - 1e-9)));
}

}  // namespace

double fan_coupling_integral(double start_left_um, double start_right_um, double pitch_um,
                             double fan_length_mm, const CouplingFit& fit) {
  // Simpson on a fine grid; the integrand is smooth
  const std::size_t cells = 2000;
  const double h = fan_length_mm / static_cast<double>(cells);
  double sum = 0.0;
  for (std::size_t k = 0; k <= cells; ++k) {
    const double u = static_cast<double>(k) / static_cast<double>(cells);
    const double kappa = coupling_from_distance(cosine_ramp(start_left_um, pitch_um, u), fit) +
                         coupling_from_distance(cosine_ramp(start_right_um, pitch_um, u), fit);
    const double weight = (k == 0 || k == cells) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    sum += weight * kappa;
  }
  return 0.1 * h * sum / 3.0;  // mm -> cm
}

ChipLayout add_fanning(const ChipLayout& layout, const CouplingFit& fit, const FanningSpec& spec) {
  validate_layout(layout);
  if (!(spec.fan_length_mm > 0.0) || !(spec.step_mm > 0.0)) {
    throw std::domain_error("fanning: fan length and step must be positive");
  }
  const bool front = spec.ends != FanEnds::back;
  const bool back = spec.ends != FanEnds::front;

  auto check_end = [&](std::size_t i, const char* which) {
    const double left = layout.x_center_um[i] - layout.x_left_um[i];
    const double right = layout.x_right_um[i] - layout.x_center_um[i];
    if (!(spec.pitch_um > std::max(left, right))) {
      throw std::domain_error(std::string("fanning: pitch ") + io::format_number(spec.pitch_um) +
                              " um does not exceed the " + which + " gate separation");
    }
    const double integral =
        fan_coupling_integral(left, right, spec.pitch_um, spec.fan_length_mm, fit);
    if (integral > spec.max_coupling_integral) {
      // the integral grows linearly with fan length for fixed end separations
      const double max_len = spec.fan_length_mm * spec.max_coupling_integral / integral;
      throw FanningError(std::string("fanning: ") + which + " fan couples " +
                             io::format_number(integral) + " rad (bound " +
                             io::format_number(spec.max_coupling_integral) +
                             "); fan length must not exceed " + io::format_number(max_len) +
                             " mm for these end separations",
                         max_len);
    }
  };
  if (front) check_end(0, "front");
  if (back) check_end(layout.size() - 1, "back");

  ChipLayout out;
  const std::size_t cells = fan_cells(spec.fan_length_mm, spec.step_mm);
  const double shift = front ? spec.fan_length_mm - layout.z_mm.front() : -layout.z_mm.front();
  auto push = [&out](double z, double xl, double xc, double xr, Segment s, std::uint8_t f) {
    out.z_mm.push_back(z);
    out.x_left_um.push_back(xl);
    out.x_center_um.push_back(xc);
    out.x_right_um.push_back(xr);
    out.segments.push_back(s);
    out.flags.push_back(f);
  };

  if (front) {
    const double xc = layout.x_center_um.front();
    for (std::size_t k = 0; k < cells; ++k) {
      const double u = static_cast<double>(k) / static_cast<double>(cells);
      push(u * spec.fan_length_mm, cosine_ramp(xc - spec.pitch_um, layout.x_left_um.front(), u),
           xc, cosine_ramp(xc + spec.pitch_um, layout.x_right_um.front(), u), Segment::fanning, 0);
    }
  }
  for (std::size_t i = 0; i < layout.size(); ++i) {
    push(layout.z_mm[i] + shift, layout.x_left_um[i], layout.x_center_um[i],
         layout.x_right_um[i], layout.segments[i], layout.flags[i]);
  }
  if (back) {
    const double z_end = out.z_mm.back();
    const double xc = layout.x_center_um.back();
    for (std::size_t k = 1; k <= cells; ++k) {
      const double u = static_cast<double>(k) / static_cast<double>(cells);
      push(z_end + u * spec.fan_length_mm,
           cosine_ramp(layout.x_left_um.back(), xc - spec.pitch_um, u), xc,
           cosine_ramp(layout.x_right_um.back(), xc + spec.pitch_um, u), Segment::fanning, 0);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json number(double v) { return io::round_sig12(v); }

}  // namespace

std::string export_layout(const ChipLayout& layout, ExportFormat format,
                          const LayoutMetadata& metadata) {
  if (layout.empty()) throw std::domain_error("export_layout: layout is empty");
  validate_layout(layout);
  if (format == ExportFormat::csv) {
    std::ostringstream os;
    os << "z_mm,x_L_um,x_C_um,x_R_um,segment\n";
    for (std::size_t i = 0; i < layout.size(); ++i) {
      os << io::format_number(layout.z_mm[i]) << ',' << io::format_number(layout.x_left_um[i])
         << ',' << io::format_number(layout.x_center_um[i]) << ','
         << io::format_number(layout.x_right_um[i]) << ',' << to_string(layout.segments[i])
         << '\n';
    }
    return os.str();
  }

  nlohmann::json meta = nlohmann::json::object();
  if (metadata.fit) {
    meta["fit"] = {{"a_per_cm", number(metadata.fit->a)},
                   {"b_per_um", number(metadata.fit->b)},
                   {"residual_norm", number(metadata.fit->residual_norm)}};
  }
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : metadata.gates) {
    gates.push_back({{"theta", number(g.theta())}, {"phi", number(g.phi())}});
  }
  meta["gates"] = gates;
  if (metadata.cyclicity_residual) {
    meta["cyclicity_residual"] = number(*metadata.cyclicity_residual);
  }
  meta["length_mm"] = number(layout.length_mm());

  nlohmann::json points = nlohmann::json::array();
  for (std::size_t i = 0; i < layout.size(); ++i) {
    points.push_back({{"z_mm", number(layout.z_mm[i])},
                      {"x_L_um", number(layout.x_left_um[i])},
                      {"x_C_um", number(layout.x_center_um[i])},
                      {"x_R_um", number(layout.x_right_um[i])},
                      {"segment", to_string(layout.segments[i])}});
  }
  nlohmann::json doc = {{"metadata", meta}, {"points", points}};
  return doc.dump(2) + "\n";
}

ChipLayout import_layout_csv(std::istream& in) {
  ChipLayout out;
  for (const auto& row : io::read_csv(in, {"z_mm", "x_L_um", "x_C_um", "x_R_um", "segment"})) {
    out.z_mm.push_back(io::parse_double(row[0]));
    out.x_left_um.push_back(io::parse_double(row[1]));
    out.x_center_um.push_back(io::parse_double(row[2]));
    out.x_right_um.push_back(io::parse_double(row[3]));
    out.segments.push_back(segment_from_string(row[4]));
    out.flags.push_back(0);
  }
  validate_layout(out);
  return out;
}

std::vector<std::string> layout_warnings(const ChipLayout& layout, const LayoutOptions& options) {
  std::vector<std::string> warnings;
  const double length = layout.length_mm();
  if (length > 150.0) {
    warnings.push_back("chip length " + io::format_number(length) +
                       " mm exceeds the 150 mm sample length");
  } else if (length > 100.0) {
    warnings.push_back("chip length " + io::format_number(length) +
                       " mm needs a 150 mm sample (exceeds 100 mm)");
  }
  std::size_t tight = 0;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const double sep = std::min(layout.x_center_um[i] - layout.x_left_um[i],
                                layout.x_right_um[i] - layout.x_center_um[i]);
    if (sep < options.min_separation_um) ++tight;
  }
  if (tight > 0) {
    warnings.push_back(std::to_string(tight) + " points closer than the minimum separation of " +
                       io::format_number(options.min_separation_um) + " um");
  }
  return warnings;
}

}  // namespace holo

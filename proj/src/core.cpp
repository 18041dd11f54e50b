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

#include "holo/core.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace holo {

std::string to_string(Mode m) {
  switch (m) {
    case Mode::L:
      return "L";
    case Mode::C:
      return "C";
    case Mode::R:
      return "R";
  }
  return "?";
}

double normalize_angle(double radians) {
  if (!std::isfinite(radians)) throw std::domain_error("angle must be finite");
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a value just below 0 can round up to exactly 2*pi
  if (r >= kTwoPi) r = 0.0;
  return r;
}

GateSpec::GateSpec(double theta, double phi)
    : theta_(normalize_angle(theta)), phi_(normalize_angle(phi)) {}

// ---------------------------------------------------------------------------

void validate_grid(std::span<const double> x, const char* what) {
  if (x.size() < 2) {
    throw std::domain_error(std::string(what) + ": need at least 2 grid points");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      throw std::domain_error(std::string(what) + ": non-finite grid position");
    }
    if (i > 0 && !(x[i] > x[i - 1])) {
      throw std::domain_error(std::string(what) + ": grid must be strictly increasing");
    }
  }
}

std::size_t locate_cell(std::span<const double> x, double at) {
  if (x.size() < 2 || !(at >= x.front() && at <= x.back())) {
    throw std::domain_error("position " + std::to_string(at) + " outside grid");
  }
  auto it = std::upper_bound(x.begin(), x.end(), at);
  std::size_t i = static_cast<std::size_t>(it - x.begin());
  if (i == 0) return 0;
  return std::min(i - 1, x.size() - 2);
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    sum += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
  }
  return sum;
}

std::vector<double> cumulative_trapezoid(std::span<const double> x,
                                         std::span<const double> y) {
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    out[i + 1] = out[i] + 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
  }
  return out;
}

std::vector<double> uniform_grid(double begin, double end, std::size_t cells) {
  if (cells == 0) throw std::domain_error("uniform_grid: need at least one cell");
  std::vector<double> z(cells + 1);
  const double h = (end - begin) / static_cast<double>(cells);
  for (std::size_t i = 0; i <= cells; ++i) z[i] = begin + h * static_cast<double>(i);
  z.back() = end;
  return z;
}

// ---------------------------------------------------------------------------

EnvelopeProfile::EnvelopeProfile(std::vector<double> z_grid, std::vector<double> omega)
    : z_(std::move(z_grid)), omega_(std::move(omega)) {
  validate_grid(z_, "EnvelopeProfile");
  if (omega_.size() != z_.size()) {
    throw std::domain_error("EnvelopeProfile: omega and grid sizes differ");
  }
  for (double w : omega_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::domain_error("EnvelopeProfile: omega must be finite and non-negative");
    }
  }
}

double EnvelopeProfile::integral() const { return trapezoid(z_, omega_); }

bool EnvelopeProfile::is_cyclic(double tol) const {
  return std::abs(integral() - kPi) <= tol;
}

bool EnvelopeProfile::is_degenerate() const {
  return std::all_of(omega_.begin(), omega_.end(), [](double w) { return w == 0.0; });
}

double EnvelopeProfile::at(double z) const {
  return interpolate_linear<double>(z_, omega_, z);
}

// ---------------------------------------------------------------------------

CouplingProfile::CouplingProfile(std::vector<double> z_grid,
                                 std::vector<Complex> kappa_left,
                                 std::vector<Complex> kappa_right)
    : z_(std::move(z_grid)),
      kappa_left_(std::move(kappa_left)),
      kappa_right_(std::move(kappa_right)) {
  validate_grid(z_, "CouplingProfile");
  if (kappa_left_.size() != z_.size() || kappa_right_.size() != z_.size()) {
    throw std::domain_error("CouplingProfile: coupling and grid sizes differ");
  }
}

CouplingProfile CouplingProfile::from_gate(const GateSpec& gate,
                                           const EnvelopeProfile& envelope) {
  const double half = 0.5 * gate.theta();
  const Complex weight_left = std::sin(half) * std::polar(1.0, gate.phi());
  const double weight_right = std::cos(half);
  std::vector<Complex> kl(envelope.size());
  std::vector<Complex> kr(envelope.size());
  for (std::size_t i = 0; i < envelope.size(); ++i) {
    kl[i] = envelope.omega()[i] * weight_left;
    kr[i] = envelope.omega()[i] * weight_right;
  }
  return CouplingProfile(envelope.z_grid(), std::move(kl), std::move(kr));
}

CouplingProfile CouplingProfile::zeros(std::vector<double> z_grid) {
  const std::size_t n = z_grid.size();
  return CouplingProfile(std::move(z_grid), std::vector<Complex>(n),
                         std::vector<Complex>(n));
}

Complex CouplingProfile::kappa_left_at(double z) const {
  return interpolate_linear<Complex>(z_, kappa_left_, z);
}

Complex CouplingProfile::kappa_right_at(double z) const {
  return interpolate_linear<Complex>(z_, kappa_right_, z);
}

bool CouplingProfile::is_finite() const {
  auto finite = [](Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); };
  return std::all_of(kappa_left_.begin(), kappa_left_.end(), finite) &&
         std::all_of(kappa_right_.begin(), kappa_right_.end(), finite);
}

Matrix3c hamiltonian_from(Complex kappa_left, Complex kappa_right) {
  Matrix3c h = Matrix3c::Zero();
  h(idx(Mode::C), idx(Mode::L)) = kappa_left;
  h(idx(Mode::L), idx(Mode::C)) = std::conj(kappa_left);
  h(idx(Mode::C), idx(Mode::R)) = kappa_right;
  h(idx(Mode::R), idx(Mode::C)) = std::conj(kappa_right);
  return h;
}

Matrix3c hamiltonian_at(const CouplingProfile& profile, double z) {
  return hamiltonian_from(profile.kappa_left_at(z), profile.kappa_right_at(z));
}

// ---------------------------------------------------------------------------

Unitary3::Unitary3(const Matrix3c& m, double tol)
    : m_(m), deviation_(holo::unitarity_deviation(m)) {
  if (!(deviation_ <= tol)) {
    throw std::domain_error("Unitary3: unitarity deviation " + std::to_string(deviation_) +
                            " exceeds tolerance");
  }
}

Matrix2c Unitary3::logical_block() const {
  Matrix2c b;
  b << m_(idx(Mode::L), idx(Mode::L)), m_(idx(Mode::L), idx(Mode::R)),
      m_(idx(Mode::R), idx(Mode::L)), m_(idx(Mode::R), idx(Mode::R));
  return b;
}

ProbabilityTable logical_probability_table(const Unitary3& u) {
  constexpr Mode logical[2] = {Mode::L, Mode::R};
  ProbabilityTable p{};
  for (int k = 0; k < 2; ++k) {
    for (int j = 0; j < 2; ++j) p[k][j] = std::norm(u(logical[j], logical[k]));
  }
  return p;
}

QubitState::QubitState(Complex amplitude_0, Complex amplitude_1)
    : a0_(amplitude_0), a1_(amplitude_1) {
  const double norm = std::norm(a0_) + std::norm(a1_);
  if (!(std::abs(norm - 1.0) <= 1e-9)) {
    throw std::domain_error("QubitState: amplitudes are not normalized");
  }
}

Holonomy2::Holonomy2(const Matrix2c& m, double tol) : m_(m) {
  if (!(holo::unitarity_deviation(m) <= tol)) {
    throw std::domain_error("Holonomy2: matrix is not unitary");
  }
}

QubitState Holonomy2::apply(const QubitState& s) const {
  const Eigen::Vector2cd out = m_ * s.vector();
  return QubitState(out(0), out(1));
}

// ---------------------------------------------------------------------------

namespace {

template <int N>
Eigen::Matrix<Complex, N, N> expm_hermitian_impl(const Eigen::Matrix<Complex, N, N>& h,
                                                 double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Complex, N, N>> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("expm_hermitian: eigendecomposition failed");
  }
  Eigen::Matrix<Complex, N, 1> phases;
  for (int k = 0; k < N; ++k) phases(k) = std::polar(1.0, -t * solver.eigenvalues()(k));
  const auto& v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

}  // namespace

Matrix3c expm_hermitian(const Matrix3c& h, double t) { return expm_hermitian_impl<3>(h, t); }
Matrix2c expm_hermitian(const Matrix2c& h, double t) { return expm_hermitian_impl<2>(h, t); }

}  // namespace holo

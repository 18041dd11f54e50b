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

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

/**
 * Shared domain types for the three-waveguide holonomic coupler.
 *
 * Mode order is fixed everywhere as (L, C, R). The logical qubit lives on the
 * (L, R) pair: |0> is a photon in L, |1> a photon in R. Lengths along the
 * propagation axis are in cm and couplings in 1/cm unless a type says
 * otherwise (the layout module works in mm and um).
 */
namespace holo {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix3c = Eigen::Matrix3cd;
using Vector3c = Eigen::Vector3cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

inline constexpr double kCyclicityTol = 1e-9;
inline constexpr double kUnitarityTol = 1e-9;

enum class Mode : int { L = 0, C = 1, R = 2 };

constexpr int idx(Mode m) { return static_cast<int>(m); }
std::string to_string(Mode m);

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class NormalizationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnderdeterminedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UndefinedVisibilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnsupportedGeometryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class PropagationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Gate parameters
// ---------------------------------------------------------------------------

/// Wraps an angle into [0, 2*pi).
double normalize_angle(double radians);

/// The (theta, phi) pair that fixes one holonomic gate. Both angles are
/// wrapped into [0, 2*pi) on construction.
class GateSpec {
 public:
  GateSpec(double theta, double phi = 0.0);

  double theta() const { return theta_; }
  double phi() const { return phi_; }

  /// theta = 3*pi/4, phi = 0: the negative Hadamard gate.
  static GateSpec hadamard() { return GateSpec(3.0 * kPi / 4.0, 0.0); }
  /// theta = pi/2, phi = 0: the negative Pauli-X gate.
  static GateSpec pauli_x() { return GateSpec(kPi / 2.0, 0.0); }

 private:
  double theta_;
  double phi_;
};

// ---------------------------------------------------------------------------
// Sampled profiles
// ---------------------------------------------------------------------------

/// Sampled common envelope Omega(z) >= 0 on a strictly increasing grid.
class EnvelopeProfile {
 public:
  EnvelopeProfile(std::vector<double> z_grid, std::vector<double> omega);

  const std::vector<double>& z_grid() const { return z_; }
  const std::vector<double>& omega() const { return omega_; }
  std::size_t size() const { return z_.size(); }
  double z_begin() const { return z_.front(); }
  double z_end() const { return z_.back(); }
  double length() const { return z_.back() - z_.front(); }

  /// Trapezoid integral of omega over the grid; the accumulated phase delta(z_f).
  double integral() const;
  bool is_cyclic(double tol = kCyclicityTol) const;
  /// True when every sample is exactly zero.
  bool is_degenerate() const;
  /// Linear interpolation; throws std::domain_error outside the grid.
  double at(double z) const;

 private:
  std::vector<double> z_;
  std::vector<double> omega_;
};

/// Sampled complex couplings kappa_L(z), kappa_R(z) between the outer
/// waveguides and the centre one.
class CouplingProfile {
 public:
  CouplingProfile(std::vector<double> z_grid, std::vector<Complex> kappa_left,
                  std::vector<Complex> kappa_right);

  /// kappa_L = Omega sin(theta/2) e^{i phi}, kappa_R = Omega cos(theta/2).
  static CouplingProfile from_gate(const GateSpec& gate,
                                   const EnvelopeProfile& envelope);

  /// All-zero couplings on the given grid.
  static CouplingProfile zeros(std::vector<double> z_grid);

  const std::vector<double>& z_grid() const { return z_; }
  const std::vector<Complex>& kappa_left() const { return kappa_left_; }
  const std::vector<Complex>& kappa_right() const { return kappa_right_; }
  std::size_t size() const { return z_.size(); }
  double z_begin() const { return z_.front(); }
  double z_end() const { return z_.back(); }

  Complex kappa_left_at(double z) const;
  Complex kappa_right_at(double z) const;
  /// True if every coupling value is finite.
  bool is_finite() const;

 private:
  std::vector<double> z_;
  std::vector<Complex> kappa_left_;
  std::vector<Complex> kappa_right_;
};

/// Single-photon coupled-mode Hamiltonian at z (linear interpolation between
/// samples). H(C,L) = kappa_L, H(C,R) = kappa_R, Hermitian mirror, no direct
/// L-R term. Throws std::domain_error if z is off the grid.
Matrix3c hamiltonian_at(const CouplingProfile& profile, double z);

/// Same matrix built from explicit coupling values.
Matrix3c hamiltonian_from(Complex kappa_left, Complex kappa_right);

// ---------------------------------------------------------------------------
// Operators and states
// ---------------------------------------------------------------------------

/// max |(U^dagger U - I)_ij|
template <typename Derived>
double unitarity_deviation(const Eigen::MatrixBase<Derived>& u) {
  const auto n = u.rows();
  return (u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

/// 3x3 unitary on (L, C, R). Construction checks unitarity against `tol`.
class Unitary3 {
 public:
  explicit Unitary3(const Matrix3c& m, double tol = kUnitarityTol);

  static Unitary3 identity() { return Unitary3(Matrix3c::Identity()); }

  const Matrix3c& matrix() const { return m_; }
  Complex operator()(Mode row, Mode col) const { return m_(idx(row), idx(col)); }
  double unitarity_deviation() const { return deviation_; }
  /// The (L, R) x (L, R) sub-block; the logical gate when nothing leaks.
  Matrix2c logical_block() const;

 private:
  Matrix3c m_;
  double deviation_;
};

class QubitState {
 public:
  QubitState(Complex amplitude_0, Complex amplitude_1);

  static QubitState zero() { return QubitState(1.0, 0.0); }
  static QubitState one() { return QubitState(0.0, 1.0); }

  Complex amplitude_0() const { return a0_; }
  Complex amplitude_1() const { return a1_; }
  Eigen::Vector2cd vector() const { return {a0_, a1_}; }

 private:
  Complex a0_;
  Complex a1_;
};

/// p[input k][output j] over the logical outcomes.
using ProbabilityTable = std::array<std::array<double, 2>, 2>;

/// 2x2 unitary on (|0>, |1>).
class Holonomy2 {
 public:
  explicit Holonomy2(const Matrix2c& m, double tol = kUnitarityTol);

  static Holonomy2 identity() { return Holonomy2(Matrix2c::Identity()); }

  const Matrix2c& matrix() const { return m_; }
  QubitState apply(const QubitState& s) const;
  /// this * other: `other` acts first.
  Holonomy2 after(const Holonomy2& other) const { return Holonomy2(m_ * other.m_); }

 private:
  Matrix2c m_;
};

/// Raw |U(j, k)|^2 for logical input k and output j (no renormalization).
ProbabilityTable logical_probability_table(const Unitary3& u);

// ---------------------------------------------------------------------------
// Numerics shared by the modules
// ---------------------------------------------------------------------------

/// exp(-i t H) for Hermitian H, by eigendecomposition.
Matrix3c expm_hermitian(const Matrix3c& h, double t);
Matrix2c expm_hermitian(const Matrix2c& h, double t);

double trapezoid(std::span<const double> x, std::span<const double> y);

/// Cumulative trapezoid, same length as x, starting at 0.
std::vector<double> cumulative_trapezoid(std::span<const double> x,
                                         std::span<const double> y);

/// Index i of the cell [x[i], x[i+1]] that contains `at`; throws
/// std::domain_error outside [x.front(), x.back()].
std::size_t locate_cell(std::span<const double> x, double at);

/// Throws std::domain_error unless the grid has >= 2 strictly increasing,
/// finite entries.
void validate_grid(std::span<const double> x, const char* what);

template <typename T>
T interpolate_linear(std::span<const double> x, std::span<const T> y, double at) {
  const std::size_t i = locate_cell(x, at);
  const double t = (at - x[i]) / (x[i + 1] - x[i]);
  return y[i] + (y[i + 1] - y[i]) * t;
}

/// Uniform grid of `cells + 1` points over [begin, end].
std::vector<double> uniform_grid(double begin, double end, std::size_t cells);

}  // namespace holo

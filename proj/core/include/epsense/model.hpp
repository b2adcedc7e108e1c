// Copyright 2026 The epsense Authors
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

#include <complex>

#include <Eigen/Dense>

#include "epsense/error.hpp"

// Shared domain types for the resonant qubit-resonator model.
//
// Units: every rate and coupling is in inverse microseconds, times are in
// microseconds. No 2*pi conversion is applied anywhere.

namespace epsense {

using cplx = std::complex<double>;

/// Coupling Omega and the two loss rates of the qubit-resonator pair.
/// Construct through make_params(); instances are always valid.
class SystemParams {
 public:
  double omega() const noexcept { return omega_; }
  double kappa_q() const noexcept { return kappa_q_; }
  double kappa_p() const noexcept { return kappa_p_; }

  /// Loss imbalance kappa_p - kappa_q.
  double kappa() const noexcept { return kappa_p_ - kappa_q_; }
  /// Common damping shared by both eigenvalues, (kappa_q + kappa_p) / 4.
  double gamma() const noexcept { return (kappa_q_ + kappa_p_) / 4.0; }
  /// Coupling at the exceptional point, |kappa| / 4.
  double omega_ep() const noexcept;
  /// Omega - omega_ep().
  double delta_omega() const noexcept { return omega_ - omega_ep(); }

  /// Same loss rates, different coupling. Validates `omega`.
  SystemParams with_omega(double omega) const;

  friend SystemParams make_params(double omega, double kappa_q, double kappa_p);

 private:
  SystemParams(double omega, double kappa_q, double kappa_p)
      : omega_(omega), kappa_q_(kappa_q), kappa_p_(kappa_p) {}

  double omega_;
  double kappa_q_;
  double kappa_p_;
};

/// Throws Error{NonFinite} or Error{NegativeRate}.
SystemParams make_params(double omega, double kappa_q, double kappa_p);

/// Half of the complex Rabi splitting.
struct ComplexEnergy {
  double re = 0.0;
  double im = 0.0;

  cplx value() const noexcept { return {re, im}; }
  double abs() const noexcept { return std::abs(value()); }
  ComplexEnergy operator-() const noexcept { return {-re, -im}; }
  friend bool operator==(const ComplexEnergy&, const ComplexEnergy&) = default;
};

/// Picks +e or -e so that re >= 0, and im <= 0 when re == 0.
ComplexEnergy canonicalize(ComplexEnergy e);

/// Unnormalized amplitudes on the single-excitation subspace {|e,0>, |g,1>}.
struct PureState2 {
  cplx c_e0{1.0, 0.0};
  cplx c_g1{0.0, 0.0};

  double norm_sq() const noexcept { return std::norm(c_e0) + std::norm(c_g1); }

  static PureState2 excited() noexcept { return {{1.0, 0.0}, {0.0, 0.0}}; }
};

/// Density matrix on the ordered basis [|g,0>, |e,0>, |g,1>].
using Density3 = Eigen::Matrix3cd;

namespace basis {
inline constexpr int kG0 = 0;
inline constexpr int kE0 = 1;
inline constexpr int kG1 = 2;
}  // namespace basis

/// |psi><psi| embedded in the three-level space (no |g,0> component).
Density3 embed_projector(const PureState2& psi);

/// The dark state |g,0><g,0|.
Density3 dark_projector();

/// max |rho - rho^dagger|.
double hermiticity_defect(const Density3& rho);

/// Smallest eigenvalue of the Hermitian part of rho.
double min_eigenvalue(const Density3& rho);

}  // namespace epsense

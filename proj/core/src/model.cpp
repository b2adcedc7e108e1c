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

#include "epsense/model.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace epsense {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NegativeRate: return "NegativeRate";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::AtExceptionalPoint: return "AtExceptionalPoint";
    case ErrorKind::NegativeTime: return "NegativeTime";
    case ErrorKind::VanishedNorm: return "VanishedNorm";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::NoSurvivors: return "NoSurvivors";
    case ErrorKind::InsufficientSurvivors: return "InsufficientSurvivors";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::DegenerateData: return "DegenerateData";
    case ErrorKind::InsufficientPoints: return "InsufficientPoints";
    case ErrorKind::NonPositiveS: return "NonPositiveS";
  }
  return "Unknown";
}

double SystemParams::omega_ep() const noexcept { return std::abs(kappa_p_ - kappa_q_) / 4.0; }

SystemParams SystemParams::with_omega(double omega) const {
  return make_params(omega, kappa_q_, kappa_p_);
}

SystemParams make_params(double omega, double kappa_q, double kappa_p) {
  if (!std::isfinite(omega) || !std::isfinite(kappa_q) || !std::isfinite(kappa_p)) {
    throw Error(ErrorKind::NonFinite, "system parameters must be finite");
  }
  if (omega < 0.0) throw Error(ErrorKind::NegativeRate, "omega = " + std::to_string(omega));
  if (kappa_q < 0.0) throw Error(ErrorKind::NegativeRate, "kappa_q = " + std::to_string(kappa_q));
  if (kappa_p < 0.0) throw Error(ErrorKind::NegativeRate, "kappa_p = " + std::to_string(kappa_p));
  return SystemParams(omega, kappa_q, kappa_p);
}

ComplexEnergy canonicalize(ComplexEnergy e) {
  if (!std::isfinite(e.re) || !std::isfinite(e.im)) {
    throw Error(ErrorKind::NonFinite, "energy must be finite");
  }
  if (e.re < 0.0 || (e.re == 0.0 && e.im > 0.0)) e = -e;
  // Normalize signed zeros so canonical values compare bitwise-equal.
  if (e.re == 0.0) e.re = 0.0;
  if (e.im == 0.0) e.im = 0.0;
  return e;
}

Density3 embed_projector(const PureState2& psi) {
  Eigen::Vector3cd v(cplx{0.0, 0.0}, psi.c_e0, psi.c_g1);
  return v * v.adjoint();
}

Density3 dark_projector() {
  Density3 rho = Density3::Zero();
  rho(basis::kG0, basis::kG0) = 1.0;
  return rho;
}

double hermiticity_defect(const Density3& rho) {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Density3& rho) {
  const Density3 h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Density3> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace epsense

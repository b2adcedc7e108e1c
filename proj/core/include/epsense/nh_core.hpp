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

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "epsense/model.hpp"

namespace epsense {

/// |E| below this is classified as the exceptional point.
inline constexpr double kEpTolerance = 1e-9;

/// Effective non-Hermitian Hamiltonian on [|e,0>, |g,1>]:
/// diag(-i kappa_q / 2, -i kappa_p / 2) with Omega on both off-diagonals.
Eigen::Matrix2cd build_hamiltonian(const SystemParams& p);

/// E^2 = Omega^2 - kappa^2 / 16, in factored form so it vanishes exactly
/// at Omega == omega_ep().
double half_splitting_squared(const SystemParams& p);

/// Canonical square root of half_splitting_squared(): real above the EP,
/// negative imaginary below it.
ComplexEnergy half_splitting(const SystemParams& p);

struct NHSpectrum {
  cplx lambda_plus;
  cplx lambda_minus;
  ComplexEnergy half_splitting;
  // Unit 2-norm, first nonzero component real and positive.
  Eigen::Vector2cd v_plus;
  Eigen::Vector2cd v_minus;
  // v = norm * (Omega, -i kappa / 4 +- E) when that vector is nonzero.
  cplx norm_plus;
  cplx norm_minus;
  bool is_ep = false;
};

/// Eigenvalues -i Gamma +- E and eigenvectors. At the EP both slots hold the
/// single coalesced eigenvector.
NHSpectrum eigensystem(const SystemParams& p);

/// |dE/dOmega| = Omega / |E|. Throws Error{AtExceptionalPoint} when |E| is
/// below kEpTolerance.
double sensitivity_theory(const SystemParams& p);

struct SpectrumRow {
  double omega;
  double delta_omega;
  double re_e;
  double im_e;
  std::optional<double> s_theory;  // empty at the EP
};

std::vector<SpectrumRow> spectrum_sweep(const SystemParams& base,
                                        std::span<const double> omega_grid);

}  // namespace epsense

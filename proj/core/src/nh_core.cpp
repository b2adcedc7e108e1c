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

#include "epsense/nh_core.hpp"

#include <cmath>
#include <limits>

namespace epsense {

namespace {

constexpr cplx kI{0.0, 1.0};

// Unit vector with the first nonzero component made real and positive.
// Returns the complex factor that maps `raw` onto it.
cplx gauge_fix(const Eigen::Vector2cd& raw, Eigen::Vector2cd& out) {
  const double norm = raw.norm();
  const cplx lead = std::abs(raw(0)) > 0.0 ? raw(0) : raw(1);
  const cplx phase = lead / std::abs(lead);
  const cplx factor = 1.0 / (norm * phase);
  out = factor * raw;
  return factor;
}

}  // namespace

Eigen::Matrix2cd build_hamiltonian(const SystemParams& p) {
  Eigen::Matrix2cd h;
  h << cplx{0.0, -p.kappa_q() / 2.0}, p.omega(),
       p.omega(), cplx{0.0, -p.kappa_p() / 2.0};
  return h;
}

double half_splitting_squared(const SystemParams& p) {
  const double quarter = p.omega_ep();
  return (p.omega() - quarter) * (p.omega() + quarter);
}

ComplexEnergy half_splitting(const SystemParams& p) {
  const double e2 = half_splitting_squared(p);
  if (e2 >= 0.0) return {std::sqrt(e2), 0.0};
  return {0.0, -std::sqrt(-e2)};
}

NHSpectrum eigensystem(const SystemParams& p) {
  NHSpectrum s;
  s.half_splitting = half_splitting(p);
  const cplx e = s.half_splitting.value();
  const cplx center{0.0, -p.gamma()};
  s.lambda_plus = center + e;
  s.lambda_minus = center - e;
  s.is_ep = s.half_splitting.abs() < kEpTolerance;

  const Eigen::Matrix2cd h = build_hamiltonian(p);
  const cplx offset{0.0, -p.kappa() / 4.0};

  auto vector_for = [&](cplx lambda, cplx sign_e, Eigen::Vector2cd& v, cplx& n) {
    // (Omega, lambda - H11) and (lambda - H22, Omega) both span the
    // eigenvector; the first form degenerates when Omega -> 0.
    const Eigen::Vector2cd first(p.omega(), offset + sign_e);
    const Eigen::Vector2cd second(lambda - h(1, 1), p.omega());
    if (first.norm() >= second.norm() && first.norm() > 0.0) {
      n = gauge_fix(first, v);
    } else if (second.norm() > 0.0) {
      gauge_fix(second, v);
      n = std::numeric_limits<double>::quiet_NaN();
    } else {
      // H is a multiple of the identity; any basis diagonalizes it.
      v = Eigen::Vector2cd(1.0, 0.0);
      n = std::numeric_limits<double>::quiet_NaN();
    }
  };

  vector_for(s.lambda_plus, e, s.v_plus, s.norm_plus);
  if (s.is_ep) {
    s.v_minus = s.v_plus;
    s.norm_minus = s.norm_plus;
  } else {
    vector_for(s.lambda_minus, -e, s.v_minus, s.norm_minus);
  }
  return s;
}

double sensitivity_theory(const SystemParams& p) {
  const double e = half_splitting(p).abs();
  if (e < kEpTolerance) {
    throw Error(ErrorKind::AtExceptionalPoint, "dE/dOmega diverges at omega = omega_ep");
  }
  return p.omega() / e;
}

std::vector<SpectrumRow> spectrum_sweep(const SystemParams& base,
                                        std::span<const double> omega_grid) {
  std::vector<SpectrumRow> rows;
  rows.reserve(omega_grid.size());
  for (double omega : omega_grid) {
    const SystemParams p = base.with_omega(omega);
    const ComplexEnergy e = half_splitting(p);
    SpectrumRow row{omega, p.delta_omega(), e.re, e.im, std::nullopt};
    if (e.abs() >= kEpTolerance) row.s_theory = sensitivity_theory(p);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace epsense

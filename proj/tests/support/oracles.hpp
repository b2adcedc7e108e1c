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

// Independent reference computations used only by the tests.
#pragma once

#include <complex>
#include <functional>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using cplx = std::complex<double>;

/// Eigenvalues of a dense 2x2 complex matrix by a general eigensolver,
/// sorted by real part descending.
inline std::pair<cplx, cplx> eigenvalues(const Eigen::Matrix2cd& m) {
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> solver(m, false);
  cplx a = solver.eigenvalues()(0);
  cplx b = solver.eigenvalues()(1);
  if (a.real() < b.real()) std::swap(a, b);
  return {a, b};
}

/// exp(-i H t) by Pade scaling-and-squaring.
inline Eigen::Matrix2cd propagator(const Eigen::Matrix2cd& h, double t) {
  const Eigen::Matrix2cd a = cplx{0.0, -t} * h;
  return a.exp();
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// E = sqrt(Omega^2 - kappa^2 / 16) evaluated directly in complex arithmetic.
inline cplx direct_half_splitting(double omega, double kappa) {
  return std::sqrt(cplx{omega * omega - kappa * kappa / 16.0, 0.0});
}

}  // namespace oracle

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

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "epsense/model.hpp"

namespace epsense {

/// Uniform sampling grid t0, t0 + dt, ..., t_max.
class TimeGrid {
 public:
  /// Throws Error{InvalidArgument} unless t0 >= 0, t_max > t0, n_points >= 2.
  TimeGrid(double t0, double t_max, std::size_t n_points);

  double t0() const noexcept { return t0_; }
  double t_max() const noexcept { return t_max_; }
  std::size_t size() const noexcept { return n_points_; }
  double spacing() const noexcept { return (t_max_ - t0_) / static_cast<double>(n_points_ - 1); }
  double at(std::size_t i) const noexcept;
  /// Index of the grid point closest to t (clamped to the grid).
  std::size_t nearest_index(double t) const noexcept;
  std::vector<double> points() const;

 private:
  double t0_;
  double t_max_;
  std::size_t n_points_;
};

/// Real coefficients of exp(-i M t) = C(t) I - i S(t) M, where
/// M = H + i Gamma has M^2 = E^2 I. `sinc_t` is sin(E t) / E, continued
/// analytically to imaginary E.
struct NoJumpKernel {
  double damping;  // exp(-Gamma t)
  double cos_et;   // cos(E t)
  double sinc_t;   // sin(E t) / E
};

NoJumpKernel no_jump_kernel(const SystemParams& p, double t);

/// Conditional (no-jump) evolution exp(-i H t) psi0, not renormalized.
/// Throws Error{NegativeTime} for t < 0.
PureState2 propagate_no_jump(const SystemParams& p, const PureState2& psi0, double t);

inline constexpr double kNormFloor = 1e-12;

struct ConditionedPopulations {
  double p_e;
  double p_g1;
};

/// Populations renormalized to the single-excitation subspace. Throws
/// Error{VanishedNorm} when the squared norm is at or below kNormFloor.
ConditionedPopulations conditioned_populations(const PureState2& psi);

/// Right-hand side of the master equation with qubit decay kappa_q and
/// photon loss kappa_p, both feeding |g,0>.
Density3 lindblad_rhs(const SystemParams& p, const Density3& rho);

/// Largest internal RK4 step in microseconds.
inline constexpr double kMaxInternalStep = 0.002;
/// Tolerance of the step-halving probe at the final time.
inline constexpr double kStepProbeTolerance = 1e-7;

/// Fixed-step RK4 integration of lindblad_rhs, sampled on `grid`. rho0 is the
/// state at t = 0 (the same origin propagate_no_jump uses); output element i
/// is rho(grid.at(i)). Throws
/// Error{StepTooLarge} when the step-halving probe disagrees by more than
/// kStepProbeTolerance.
std::vector<Density3> integrate_master(const SystemParams& p, const Density3& rho0,
                                       const TimeGrid& grid);

}  // namespace epsense

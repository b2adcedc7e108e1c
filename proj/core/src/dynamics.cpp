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

#include "epsense/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epsense/nh_core.hpp"

namespace epsense {

namespace {

constexpr cplx kI{0.0, 1.0};

// Below |E t| = 1e-4 the truncated series for cos and sin(x)/x is exact to
// double precision.
constexpr double kSeriesThreshold = 1e-8;  // on (E t)^2

Eigen::Matrix3cd embedded_hamiltonian(const SystemParams& p) {
  Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
  h.bottomRightCorner<2, 2>() = build_hamiltonian(p);
  return h;
}

Density3 rk4_step(const SystemParams& p, const Density3& rho, double h) {
  const Density3 k1 = lindblad_rhs(p, rho);
  const Density3 k2 = lindblad_rhs(p, rho + 0.5 * h * k1);
  const Density3 k3 = lindblad_rhs(p, rho + 0.5 * h * k2);
  const Density3 k4 = lindblad_rhs(p, rho + h * k3);
  Density3 next = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  // Exact arithmetic keeps rho Hermitian; remove the rounding drift.
  return 0.5 * (next + next.adjoint());
}

std::size_t substeps_for(double span, double max_step) {
  if (span <= 0.0) return 0;
  const double ratio = span / max_step;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(ratio - 1e-9)));
}

Density3 advance(const SystemParams& p, Density3 rho, double span, double max_step) {
  const std::size_t n = substeps_for(span, max_step);
  if (n == 0) return rho;
  const double h = span / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) rho = rk4_step(p, rho, h);
  return rho;
}

std::vector<Density3> integrate_with_step(const SystemParams& p, const Density3& rho0,
                                          const TimeGrid& grid, double max_step) {
  std::vector<Density3> out;
  out.reserve(grid.size());
  Density3 rho = advance(p, rho0, grid.t0(), max_step);
  out.push_back(rho);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    rho = advance(p, rho, grid.at(i) - grid.at(i - 1), max_step);
    out.push_back(rho);
  }
  return out;
}

}  // namespace

TimeGrid::TimeGrid(double t0, double t_max, std::size_t n_points)
    : t0_(t0), t_max_(t_max), n_points_(n_points) {
  if (!std::isfinite(t0) || !std::isfinite(t_max)) {
    throw Error(ErrorKind::NonFinite, "time grid bounds must be finite");
  }
  if (t0 < 0.0) throw Error(ErrorKind::InvalidArgument, "time grid needs t0 >= 0");
  if (!(t_max > t0)) throw Error(ErrorKind::InvalidArgument, "time grid needs t_max > t0");
  if (n_points < 2) throw Error(ErrorKind::InvalidArgument, "time grid needs at least 2 points");
}

double TimeGrid::at(std::size_t i) const noexcept {
  if (i + 1 >= n_points_) return t_max_;
  return t0_ + spacing() * static_cast<double>(i);
}

std::size_t TimeGrid::nearest_index(double t) const noexcept {
  if (!(t > t0_)) return 0;
  if (t >= t_max_) return n_points_ - 1;
  const double k = std::round((t - t0_) / spacing());
  return std::min(static_cast<std::size_t>(k), n_points_ - 1);
}

std::vector<double> TimeGrid::points() const {
  std::vector<double> t(n_points_);
  for (std::size_t i = 0; i < n_points_; ++i) t[i] = at(i);
  return t;
}

NoJumpKernel no_jump_kernel(const SystemParams& p, double t) {
  const double e2 = half_splitting_squared(p);
  const double x = e2 * t * t;
  NoJumpKernel k{std::exp(-p.gamma() * t), 0.0, 0.0};
  if (std::abs(x) < kSeriesThreshold) {
    k.cos_et = 1.0 - x / 2.0 + x * x / 24.0 - x * x * x / 720.0;
    k.sinc_t = t * (1.0 - x / 6.0 + x * x / 120.0 - x * x * x / 5040.0);
  } else if (e2 > 0.0) {
    const double e = std::sqrt(e2);
    k.cos_et = std::cos(e * t);
    k.sinc_t = std::sin(e * t) / e;
  } else {
    const double eta = std::sqrt(-e2);
    k.cos_et = std::cosh(eta * t);
    k.sinc_t = std::sinh(eta * t) / eta;
  }
  return k;
}

PureState2 propagate_no_jump(const SystemParams& p, const PureState2& psi0, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::NegativeTime, "t = " + std::to_string(t));
  if (!std::isfinite(t)) throw Error(ErrorKind::NonFinite, "t must be finite");
  const NoJumpKernel k = no_jump_kernel(p, t);
  const double q = p.kappa() / 4.0;
  const cplx off = -kI * p.omega() * k.sinc_t;
  PureState2 out;
  out.c_e0 = k.damping * ((k.cos_et + q * k.sinc_t) * psi0.c_e0 + off * psi0.c_g1);
  out.c_g1 = k.damping * (off * psi0.c_e0 + (k.cos_et - q * k.sinc_t) * psi0.c_g1);
  return out;
}

ConditionedPopulations conditioned_populations(const PureState2& psi) {
  const double n = psi.norm_sq();
  if (!(n > kNormFloor)) {
    throw Error(ErrorKind::VanishedNorm, "no-jump probability " + std::to_string(n));
  }
  return {std::norm(psi.c_e0) / n, std::norm(psi.c_g1) / n};
}

Density3 lindblad_rhs(const SystemParams& p, const Density3& rho) {
  using namespace basis;
  const Eigen::Matrix3cd h = embedded_hamiltonian(p);
  Density3 d = -kI * (h * rho - rho * h.adjoint());
  d(kG0, kG0) += p.kappa_q() * rho(kE0, kE0) + p.kappa_p() * rho(kG1, kG1);
  return d;
}

std::vector<Density3> integrate_master(const SystemParams& p, const Density3& rho0,
                                       const TimeGrid& grid) {
  const double max_step = std::min(grid.spacing(), kMaxInternalStep);
  std::vector<Density3> out = integrate_with_step(p, rho0, grid, max_step);

  const Density3 refined = advance(p, rho0, grid.t_max(), max_step / 2.0);
  const double probe = (refined - out.back()).cwiseAbs().maxCoeff();
  if (!(probe <= kStepProbeTolerance)) {
    throw Error(ErrorKind::StepTooLarge,
                "step-halving difference " + std::to_string(probe) + " at t = " +
                    std::to_string(grid.t_max()));
  }
  return out;
}

}  // namespace epsense

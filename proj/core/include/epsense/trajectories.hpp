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
#include <cstdint>
#include <optional>
#include <vector>

#include "epsense/dynamics.hpp"
#include "epsense/model.hpp"

namespace epsense {

enum class JumpChannel { QubitDecay, PhotonLoss };

/// First-jump record of one quantum-jump trajectory started in |e,0> at t = 0.
/// After a jump the state is |g,0> for good, so nothing else is recorded.
struct TrajectoryRecord {
  bool jumped = false;
  std::optional<double> jump_time;
  std::optional<JumpChannel> jump_channel;
  // Normalized no-jump state at grid.t_max(); empty when the trajectory is dark.
  std::optional<PureState2> final_state;

  bool survives_at(double t) const noexcept { return !jumped || *jump_time > t; }
};

/// Jump-time resolution of the bisection search, in microseconds.
inline constexpr double kJumpTimeResolution = 1e-6;

/// Draws r in (0,1) from a counter-based stream keyed by `seed`; the jump
/// happens when the no-jump norm first drops below r. The channel is chosen
/// with odds kappa_q |c_e0|^2 : kappa_p |c_g1|^2 at that instant.
TrajectoryRecord sample_trajectory(const SystemParams& p, const TimeGrid& grid,
                                   std::uint64_t seed);

struct EnsembleStats {
  std::size_t n_traj = 0;
  std::vector<double> times;
  std::vector<std::size_t> survivors;
  std::vector<double> survival_fraction;
  // NaN where no trajectory survives.
  std::vector<double> conditioned_p_e;
  std::vector<double> conditioned_p_g1;
  std::vector<Density3> rho_mean;
  std::size_t qubit_decay_jumps = 0;
  std::size_t photon_loss_jumps = 0;
};

/// Runs n_traj trajectories, trajectory i seeded with stream_seed(seed, i).
/// Aggregation uses integer survivor counts only, so the result is
/// bit-identical for every `workers` value (0 = hardware concurrency).
EnsembleStats run_ensemble(const SystemParams& p, const TimeGrid& grid, std::size_t n_traj,
                           std::uint64_t seed, unsigned workers = 0);

struct PostSelected {
  double p_e;
  double p_g1;
  double survival;
};

/// Conditioned populations at the grid point nearest t. Throws
/// Error{NoSurvivors} when no trajectory survives there.
PostSelected postselect_no_jump(const EnsembleStats& stats, double t);

}  // namespace epsense

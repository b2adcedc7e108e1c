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

#include "epsense/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epsense/rng.hpp"
#include "parallel.hpp"

namespace epsense {

namespace {

double no_jump_probability(const SystemParams& p, double t) {
  return propagate_no_jump(p, PureState2::excited(), t).norm_sq();
}

struct Tally {
  // jumps_before[k]: trajectories whose jump time lies in (t_{k-1}, t_k],
  // with t_{-1} = 0. Survivors at t_k = n - sum_{j <= k} jumps_before[j].
  std::vector<std::size_t> jumps_before;
  std::size_t qubit_decay = 0;
  std::size_t photon_loss = 0;
};

}  // namespace

TrajectoryRecord sample_trajectory(const SystemParams& p, const TimeGrid& grid,
                                   std::uint64_t seed) {
  CounterRng rng(seed);
  const double threshold = rng.next_open01();
  TrajectoryRecord rec;

  // The no-jump probability is non-increasing, so the first grid point where
  // it falls below the threshold can be found by binary search.
  const std::vector<double> times = grid.points();
  const auto below = [&](double t) { return no_jump_probability(p, t) < threshold; };
  const auto it = std::partition_point(times.begin(), times.end(),
                                       [&](double t) { return !below(t); });
  if (it == times.end()) {
    const PureState2 psi = propagate_no_jump(p, PureState2::excited(), grid.t_max());
    const double n = std::sqrt(psi.norm_sq());
    rec.final_state = PureState2{psi.c_e0 / n, psi.c_g1 / n};
    return rec;
  }

  double lo = it == times.begin() ? 0.0 : *(it - 1);
  double hi = *it;
  while (hi - lo > kJumpTimeResolution) {
    const double mid = 0.5 * (lo + hi);
    if (below(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  const PureState2 psi = propagate_no_jump(p, PureState2::excited(), hi);
  const double rate_q = p.kappa_q() * std::norm(psi.c_e0);
  const double rate_p = p.kappa_p() * std::norm(psi.c_g1);
  const double u = rng.next_open01();
  rec.jumped = true;
  rec.jump_time = hi;
  rec.jump_channel = u * (rate_q + rate_p) < rate_q ? JumpChannel::QubitDecay
                                                    : JumpChannel::PhotonLoss;
  return rec;
}

EnsembleStats run_ensemble(const SystemParams& p, const TimeGrid& grid, std::size_t n_traj,
                           std::uint64_t seed, unsigned workers) {
  if (n_traj == 0) throw Error(ErrorKind::InvalidArgument, "n_traj must be at least 1");
  const std::size_t n_grid = grid.size();
  const std::vector<double> times = grid.points();

  const unsigned w = detail::resolve_workers(workers, n_traj);
  std::vector<Tally> tallies(w, Tally{std::vector<std::size_t>(n_grid + 1, 0), 0, 0});
  detail::parallel_blocks(n_traj, w, [&](unsigned worker, std::size_t begin, std::size_t end) {
    Tally& tally = tallies[worker];
    for (std::size_t i = begin; i < end; ++i) {
      const TrajectoryRecord rec = sample_trajectory(p, grid, stream_seed(seed, i));
      if (!rec.jumped) {
        tally.jumps_before[n_grid] += 1;
        continue;
      }
      const auto k = static_cast<std::size_t>(
          std::lower_bound(times.begin(), times.end(), *rec.jump_time) - times.begin());
      tally.jumps_before[k] += 1;
      if (*rec.jump_channel == JumpChannel::QubitDecay) {
        ++tally.qubit_decay;
      } else {
        ++tally.photon_loss;
      }
    }
  });

  EnsembleStats stats;
  stats.n_traj = n_traj;
  stats.times = times;
  std::vector<std::size_t> jumps(n_grid + 1, 0);
  for (const Tally& t : tallies) {
    for (std::size_t k = 0; k <= n_grid; ++k) jumps[k] += t.jumps_before[k];
    stats.qubit_decay_jumps += t.qubit_decay;
    stats.photon_loss_jumps += t.photon_loss;
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double total = static_cast<double>(n_traj);
  std::size_t alive = n_traj;
  for (std::size_t k = 0; k < n_grid; ++k) {
    alive -= jumps[k];
    const double f = static_cast<double>(alive) / total;
    stats.survivors.push_back(alive);
    stats.survival_fraction.push_back(f);

    // Every survivor at t_k carries the same normalized no-jump state.
    const PureState2 psi = propagate_no_jump(p, PureState2::excited(), times[k]);
    const double n = psi.norm_sq();
    Density3 rho = (1.0 - f) * dark_projector();
    if (alive > 0 && n > 0.0) {
      const PureState2 unit{psi.c_e0 / std::sqrt(n), psi.c_g1 / std::sqrt(n)};
      stats.conditioned_p_e.push_back(std::norm(unit.c_e0));
      stats.conditioned_p_g1.push_back(std::norm(unit.c_g1));
      rho += f * embed_projector(unit);
    } else {
      stats.conditioned_p_e.push_back(nan);
      stats.conditioned_p_g1.push_back(nan);
    }
    stats.rho_mean.push_back(rho);
  }
  return stats;
}

PostSelected postselect_no_jump(const EnsembleStats& stats, double t) {
  if (stats.times.empty()) throw Error(ErrorKind::InvalidArgument, "empty ensemble");
  const auto it = std::lower_bound(stats.times.begin(), stats.times.end(), t);
  std::size_t k = static_cast<std::size_t>(it - stats.times.begin());
  if (k == stats.times.size()) {
    k -= 1;
  } else if (k > 0 && (t - stats.times[k - 1]) <= (stats.times[k] - t)) {
    k -= 1;
  }
  if (stats.survivors[k] == 0) {
    throw Error(ErrorKind::NoSurvivors, "no trajectory survives at t = " + std::to_string(stats.times[k]));
  }
  return {stats.conditioned_p_e[k], stats.conditioned_p_g1[k], stats.survival_fraction[k]};
}

}  // namespace epsense

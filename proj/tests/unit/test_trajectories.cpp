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

#include <cmath>
#include <set>

#include "doctest.h"
#include "epsense/dynamics.hpp"
#include "epsense/rng.hpp"
#include "epsense/trajectories.hpp"

using namespace epsense;

namespace {

const SystemParams kNominal = make_params(1.2325, 0.07, 5.0);

}  // namespace

TEST_CASE("counter rng is reproducible and uniform") {
  CounterRng a(99);
  CounterRng b(99);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  CounterRng c(7);
  double sum = 0.0;
  double sum_sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = c.next_open01();
    CHECK_UNARY(u > 0.0);
    CHECK_UNARY(u < 1.0);
    sum += u;
    sum_sq += u * u;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(std::abs(mean - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
  CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.01));

  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 10000; ++i) seeds.insert(stream_seed(42, i));
  CHECK(seeds.size() == 10000);
}

TEST_CASE("closed system never jumps") {
  const SystemParams p = make_params(1.0, 0.0, 0.0);
  const TimeGrid grid(0.0, 2.0, 21);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const TrajectoryRecord r = sample_trajectory(p, grid, s);
    CHECK_FALSE(r.jumped);
    CHECK_FALSE(r.jump_time.has_value());
    CHECK_FALSE(r.jump_channel.has_value());
    REQUIRE(r.final_state.has_value());
    CHECK(r.final_state->norm_sq() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(r.final_state->c_e0) == doctest::Approx(std::abs(std::cos(2.0))).epsilon(1e-12));
  }
}

TEST_CASE("only photon loss when the qubit does not decay") {
  const SystemParams p = make_params(1.5, 0.0, 5.0);
  const TimeGrid grid(0.0, 3.0, 31);
  int jumps = 0;
  for (std::uint64_t s = 0; s < 2000; ++s) {
    const TrajectoryRecord r = sample_trajectory(p, grid, s);
    if (!r.jumped) {
      CHECK_FALSE(r.jump_channel.has_value());
      continue;
    }
    ++jumps;
    CHECK(*r.jump_channel == JumpChannel::PhotonLoss);
    CHECK_FALSE(r.final_state.has_value());
    CHECK(*r.jump_time > 0.0);
    CHECK(*r.jump_time <= 3.0);
  }
  CHECK(jumps > 1000);
}

TEST_CASE("jump time is located to the bisection resolution") {
  const TimeGrid grid(0.0, 2.0, 5);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const TrajectoryRecord r = sample_trajectory(kNominal, grid, s);
    if (!r.jumped) continue;
    CounterRng rng(s);
    const double threshold = rng.next_open01();
    const double t = *r.jump_time;
    const auto n_at = [&](double x) {
      return propagate_no_jump(kNominal, PureState2::excited(), x).norm_sq();
    };
    CHECK(n_at(t) < threshold);
    CHECK(n_at(std::max(0.0, t - 1.01 * kJumpTimeResolution)) >= threshold);
  }
}

TEST_CASE("no-jump fraction matches the analytic survival probability") {
  const TimeGrid grid(0.0, 1.0, 11);
  const std::size_t n = 100000;
  std::size_t survived = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!sample_trajectory(kNominal, grid, stream_seed(2024, i)).jumped) ++survived;
  }
  const double expected = propagate_no_jump(kNominal, PureState2::excited(), 1.0).norm_sq();
  const double sigma = std::sqrt(expected * (1.0 - expected) / n);
  CHECK(std::abs(static_cast<double>(survived) / n - expected) <= 3.0 * sigma);
}

TEST_CASE("single-trajectory ensemble mirrors the trajectory") {
  const TimeGrid grid(0.0, 2.0, 21);
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
    const EnsembleStats stats = run_ensemble(kNominal, grid, 1, seed, 1);
    const TrajectoryRecord r = sample_trajectory(kNominal, grid, stream_seed(seed, 0));
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const bool alive = r.survives_at(grid.at(k));
      CHECK(stats.survivors[k] == (alive ? 1u : 0u));
      CHECK(stats.survival_fraction[k] == (alive ? 1.0 : 0.0));
      if (!alive) {
        CHECK(std::isnan(stats.conditioned_p_e[k]));
        CHECK((stats.rho_mean[k] - dark_projector()).cwiseAbs().maxCoeff() == 0.0);
      }
    }
  }
}

TEST_CASE("ensemble is identical across worker counts") {
  const TimeGrid grid(0.0, 2.0, 41);
  const EnsembleStats one = run_ensemble(kNominal, grid, 20000, 77, 1);
  for (unsigned w : {2u, 3u, 8u}) {
    const EnsembleStats many = run_ensemble(kNominal, grid, 20000, 77, w);
    CHECK(many.survivors == one.survivors);
    CHECK(many.qubit_decay_jumps == one.qubit_decay_jumps);
    CHECK(many.photon_loss_jumps == one.photon_loss_jumps);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      CHECK(many.survival_fraction[k] == one.survival_fraction[k]);
      CHECK((many.rho_mean[k] - one.rho_mean[k]).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("ensemble statistics are consistent") {
  const TimeGrid grid(0.0, 2.0, 41);
  const EnsembleStats stats = run_ensemble(kNominal, grid, 5000, 5);
  CHECK(stats.survival_fraction.front() == 1.0);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    CHECK(stats.survival_fraction[k] <= stats.survival_fraction[k - 1]);
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (stats.survivors[k] == 0) continue;
    CHECK(stats.conditioned_p_e[k] + stats.conditioned_p_g1[k] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(stats.rho_mean[k].trace() - 1.0) < 1e-14);
  }
  CHECK(stats.qubit_decay_jumps + stats.photon_loss_jumps + stats.survivors.back() == 5000);
}

TEST_CASE("postselect_no_jump") {
  const TimeGrid grid(0.0, 2.0, 41);
  const EnsembleStats stats = run_ensemble(kNominal, grid, 2000, 9);
  const PostSelected start = postselect_no_jump(stats, 0.0);
  CHECK(start.p_e == 1.0);
  CHECK(start.p_g1 == 0.0);
  CHECK(start.survival == 1.0);

  const PostSelected mid = postselect_no_jump(stats, 1.01);
  const ConditionedPopulations ref =
      conditioned_populations(propagate_no_jump(kNominal, PureState2::excited(), 1.0));
  CHECK(mid.p_e == doctest::Approx(ref.p_e).epsilon(1e-14));

  EnsembleStats dead = stats;
  dead.survivors.back() = 0;
  try {
    postselect_no_jump(dead, 2.0);
    FAIL("expected NoSurvivors");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoSurvivors);
  }
}

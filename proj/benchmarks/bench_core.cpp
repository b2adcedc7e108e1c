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

#include <benchmark/benchmark.h>

#include <vector>

#include "epsense/dynamics.hpp"
#include "epsense/estimation.hpp"
#include "epsense/nh_core.hpp"
#include "epsense/trajectories.hpp"

using namespace epsense;

namespace {

const SystemParams kNominal = make_params(1.2325, 0.07, 5.0);

void BM_Eigensystem(benchmark::State& state) {
  const SystemParams p = kNominal.with_omega(1.5);
  for (auto _ : state) benchmark::DoNotOptimize(eigensystem(p));
}
BENCHMARK(BM_Eigensystem);

void BM_PropagateNoJump(benchmark::State& state) {
  const SystemParams p = kNominal.with_omega(1.5);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate_no_jump(p, PureState2::excited(), t));
    t = t < 2.0 ? t + 1e-3 : 0.0;
  }
}
BENCHMARK(BM_PropagateNoJump);

void BM_IntegrateMaster(benchmark::State& state) {
  const TimeGrid grid(0.0, 2.0, static_cast<std::size_t>(state.range(0)));
  const Density3 rho0 = embed_projector(PureState2::excited());
  for (auto _ : state) benchmark::DoNotOptimize(integrate_master(kNominal, rho0, grid));
}
BENCHMARK(BM_IntegrateMaster)->Arg(81)->Arg(401)->Unit(benchmark::kMillisecond);

void BM_Ensemble(benchmark::State& state) {
  const TimeGrid grid(0.0, 2.0, 81);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_ensemble(kNominal, grid, n, 1, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Ensemble)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_FitEigenenergy(benchmark::State& state) {
  const SystemParams p = kNominal.with_omega(state.range(0) / 1000.0);
  const TimeGrid grid(0.0, 2.0, 81);
  const auto data = condition_records(simulate_measurements(p, grid, 3000, 5));
  FitOptions opts;
  opts.omega_hint = p.omega();
  opts.throw_if_not_converged = false;
  for (auto _ : state) benchmark::DoNotOptimize(fit_eigenenergy(data, {0.07, 5.0}, opts));
}
BENCHMARK(BM_FitEigenenergy)->Arg(1000)->Arg(1300)->Arg(2000)->Unit(benchmark::kMicrosecond);

void BM_Campaign(benchmark::State& state) {
  const TimeGrid grid(0.0, 2.0, 81);
  const auto omegas = campaign_omegas(kNominal, default_campaign_offsets());
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sensing_campaign(omegas, kNominal, grid, 3000, 1, 1));
  }
}
BENCHMARK(BM_Campaign)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

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
#include <span>
#include <string>
#include <vector>

#include "epsense/dynamics.hpp"
#include "epsense/model.hpp"

namespace epsense {

/// Outcome counts of `shots` projective measurements at time t.
struct MeasurementRecord {
  double t = 0.0;
  std::size_t shots = 0;
  std::size_t counts_e0 = 0;
  std::size_t counts_g1 = 0;
  std::size_t counts_g0 = 0;
};

/// Exact outcome probabilities (p_e0, p_g1, p_g0) at time t for a system
/// prepared in |e,0> at t = 0. Both loss channels end in |g,0>, so the
/// no-jump amplitudes fix all three.
struct OutcomeProbabilities {
  double p_e0;
  double p_g1;
  double p_g0;
};
OutcomeProbabilities outcome_probabilities(const SystemParams& p, double t);

/// One multinomial draw of size `shots` per grid time. Shot k at grid point i
/// uses draw k of the stream keyed by stream_seed(seed, i).
std::vector<MeasurementRecord> simulate_measurements(const SystemParams& p, const TimeGrid& grid,
                                                     std::size_t shots, std::uint64_t seed);

/// Minimum number of post-selected shots for a usable time point.
inline constexpr std::size_t kMinKept = 25;

/// A post-selected data point: p_e among shots that kept the excitation.
struct ConditionedPoint {
  double t = 0.0;
  double p_e = 0.0;
  std::size_t n_kept = 0;
};

/// Drops |g,0> outcomes and renormalizes. Throws Error{InsufficientSurvivors}
/// when fewer than kMinKept shots remain.
ConditionedPoint condition_record(const MeasurementRecord& r);

/// Conditioned records that pass condition_record(); others are skipped.
std::vector<ConditionedPoint> condition_records(std::span<const MeasurementRecord> records);

struct KnownRates {
  double kappa_q;
  double kappa_p;
};

/// Conditioned qubit population at time t for trial half-splitting E, with
/// the coupling tied to E through Omega(E) = sqrt(E^2 + (kappa/4)^2).
double conditioned_model(cplx energy, double kappa, double t);

struct FitOptions {
  // Nominal coupling of the run, used for one of the restarts.
  std::optional<double> omega_hint;
  bool throw_if_not_converged = true;
};

struct FitResult {
  ComplexEnergy energy;
  double residual_rss = 0.0;
  std::size_t n_points_used = 0;
  bool converged = false;
};

/// Weighted least-squares estimate of E from post-selected populations,
/// weights n_kept. Nelder-Mead over (Re E, Im E) with four restarts. The model
/// depends on E only through E^2 and is invariant under complex conjugation,
/// so the result is reported as (|Re E|, -|Im E|).
///
/// Throws Error{InsufficientPoints} for fewer than 5 points or a time span
/// shorter than 1 / Gamma, Error{DegenerateData} for constant data and
/// Error{NotConverged} if no restart meets the convergence criterion (unless
/// options.throw_if_not_converged is false).
FitResult fit_eigenenergy(std::span<const ConditionedPoint> data, KnownRates rates,
                          const FitOptions& options = {});

struct SensitivityPoint {
  double omega_true = 0.0;
  double delta_omega = 0.0;
  double s = 0.0;
};

/// S = (Re E - Im E) / |delta_omega|. Throws Error{AtExceptionalPoint} when
/// delta_omega == 0.
SensitivityPoint sensitivity_from_fit(ComplexEnergy e, double delta_omega, double omega_true = 0.0);

enum class EpSide { AboveEP, BelowEP };

std::string to_string(EpSide side);

struct PowerLawFit {
  double a = 0.0;
  double b = 0.0;
  double stderr_a = 0.0;
  double stderr_b = 0.0;
  EpSide side = EpSide::AboveEP;
  std::size_t n_points = 0;
};

/// Ordinary least squares of ln S against ln |delta_omega / omega_ep| using
/// the points on `side`. Standard errors come from the regression residuals
/// (zero for an exact fit); stderr_a is propagated as A * stderr(ln A).
/// Throws Error{InsufficientPoints} with fewer than 3 points on the side and
/// Error{NonPositiveS} (index = position in `points`) for S <= 0.
PowerLawFit fit_power_law(std::span<const SensitivityPoint> points, double omega_ep, EpSide side);

struct CampaignPoint {
  double omega = 0.0;
  FitResult fit;
  SensitivityPoint sensitivity;
  std::size_t n_points_kept = 0;
  std::string error;  // empty when the point was fitted successfully
};

struct PowerLawOutcome {
  EpSide side = EpSide::AboveEP;
  std::optional<PowerLawFit> fit;
  std::string error;  // set when the side has points but no fit
};

struct CampaignReport {
  double kappa_q = 0.0;
  double kappa_p = 0.0;
  double omega_ep = 0.0;
  double t0 = 0.0;
  double t_max = 0.0;
  std::size_t n_times = 0;
  std::size_t shots = 0;
  std::uint64_t seed = 0;
  std::vector<CampaignPoint> points;
  // One entry per side that has at least one point.
  std::vector<PowerLawOutcome> power_laws;

  bool all_converged() const noexcept;
  const PowerLawOutcome* side(EpSide s) const noexcept;
};

/// Default relative offsets |delta_omega| / omega_ep, used on each side.
std::vector<double> default_campaign_offsets();

/// Omega values at omega_ep * (1 -+ offset), below-EP side first.
std::vector<double> campaign_omegas(const SystemParams& base, std::span<const double> offsets);

/// Simulates, conditions, fits and summarizes every Omega in `omegas`.
/// Point i draws its measurements from stream_seed(seed, i). Throws
/// Error{AtExceptionalPoint} if an Omega coincides with omega_ep.
CampaignReport run_sensing_campaign(std::span<const double> omegas, const SystemParams& base,
                                    const TimeGrid& grid, std::size_t shots, std::uint64_t seed,
                                    unsigned workers = 0);

}  // namespace epsense

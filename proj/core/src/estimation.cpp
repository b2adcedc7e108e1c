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

#include "epsense/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "epsense/nh_core.hpp"
#include "epsense/rng.hpp"
#include "epsense/simplex.hpp"
#include "parallel.hpp"

namespace epsense {

namespace {

constexpr cplx kI{0.0, 1.0};

// Peak of the periodogram of the mean-removed data, in rad / us. Samples need
// not be uniform.
double dominant_frequency(std::span<const ConditionedPoint> data) {
  double mean = 0.0;
  for (const auto& d : data) mean += d.p_e;
  mean /= static_cast<double>(data.size());

  double min_dt = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < data.size(); ++i) {
    min_dt = std::min(min_dt, data[i].t - data[i - 1].t);
  }
  const double span = data.back().t - data.front().t;
  const double nyquist = std::numbers::pi / min_dt;
  const double step = std::numbers::pi / (4.0 * span);

  double best_w = 0.0;
  double best_power = -1.0;
  for (double w = step; w <= nyquist; w += step) {
    cplx acc{0.0, 0.0};
    for (const auto& d : data) acc += (d.p_e - mean) * std::exp(-kI * (w * d.t));
    const double power = std::norm(acc);
    if (power > best_power) {
      best_power = power;
      best_w = w;
    }
  }
  return best_w;
}

// Rate at which the data settles onto its late-time value, from a log-linear
// fit of |p_e - p_late| over the first half of the record.
std::optional<double> settling_rate(std::span<const ConditionedPoint> data) {
  const std::size_t n = data.size();
  const std::size_t tail = std::min<std::size_t>(3, n);
  double late = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) late += data[i].p_e;
  late /= static_cast<double>(tail);

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double y = std::abs(data[i].p_e - late);
    if (y < 1e-6) continue;
    const double ly = std::log(y);
    sx += data[i].t;
    sy += ly;
    sxx += data[i].t * data[i].t;
    sxy += data[i].t * ly;
    ++used;
  }
  if (used < 2) return std::nullopt;
  const double m = static_cast<double>(used);
  const double denom = m * sxx - sx * sx;
  if (denom <= 0.0) return std::nullopt;
  const double slope = (m * sxy - sx * sy) / denom;
  if (!(slope < 0.0)) return std::nullopt;
  return -slope;
}

}  // namespace

OutcomeProbabilities outcome_probabilities(const SystemParams& p, double t) {
  const PureState2 psi = propagate_no_jump(p, PureState2::excited(), t);
  const double pe = std::norm(psi.c_e0);
  const double pg1 = std::norm(psi.c_g1);
  return {pe, pg1, std::max(0.0, 1.0 - pe - pg1)};
}

std::vector<MeasurementRecord> simulate_measurements(const SystemParams& p, const TimeGrid& grid,
                                                     std::size_t shots, std::uint64_t seed) {
  if (shots == 0) throw Error(ErrorKind::InvalidArgument, "shots must be at least 1");
  std::vector<MeasurementRecord> records;
  records.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.at(i);
    const OutcomeProbabilities prob = outcome_probabilities(p, t);
    CounterRng rng(stream_seed(seed, i));
    MeasurementRecord r{t, shots, 0, 0, 0};
    for (std::size_t k = 0; k < shots; ++k) {
      const double u = rng.next_open01();
      if (u < prob.p_e0) {
        ++r.counts_e0;
      } else if (u < prob.p_e0 + prob.p_g1) {
        ++r.counts_g1;
      } else {
        ++r.counts_g0;
      }
    }
    records.push_back(r);
  }
  return records;
}

ConditionedPoint condition_record(const MeasurementRecord& r) {
  const std::size_t kept = r.counts_e0 + r.counts_g1;
  if (kept < kMinKept) {
    throw Error(ErrorKind::InsufficientSurvivors,
                std::to_string(kept) + " post-selected shots at t = " + std::to_string(r.t));
  }
  return {r.t, static_cast<double>(r.counts_e0) / static_cast<double>(kept), kept};
}

std::vector<ConditionedPoint> condition_records(std::span<const MeasurementRecord> records) {
  std::vector<ConditionedPoint> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    if (r.counts_e0 + r.counts_g1 >= kMinKept) out.push_back(condition_record(r));
  }
  return out;
}

double conditioned_model(cplx energy, double kappa, double t) {
  const cplx e2 = energy * energy;
  const cplx x = e2 * (t * t);
  cplx cos_et;
  cplx sinc_t;
  if (std::abs(x) < 1e-8) {
    cos_et = 1.0 - x / 2.0 + x * x / 24.0 - x * x * x / 720.0;
    sinc_t = t * (1.0 - x / 6.0 + x * x / 120.0 - x * x * x / 5040.0);
  } else {
    cos_et = std::cos(energy * t);
    sinc_t = std::sin(energy * t) / energy;
  }
  const double q = kappa / 4.0;
  const cplx omega = std::sqrt(e2 + q * q);
  const double f = std::norm(cos_et + q * sinc_t);
  const double g = std::norm(-kI * omega * sinc_t);
  return f / (f + g);
}

FitResult fit_eigenenergy(std::span<const ConditionedPoint> data, KnownRates rates,
                          const FitOptions& options) {
  if (data.size() < 5) {
    throw Error(ErrorKind::InsufficientPoints,
                "need at least 5 conditioned points, got " + std::to_string(data.size()));
  }
  const SystemParams known = make_params(0.0, rates.kappa_q, rates.kappa_p);
  const double span = data.back().t - data.front().t;
  if (known.gamma() > 0.0 && span * known.gamma() < 1.0) {
    throw Error(ErrorKind::InsufficientPoints, "data span shorter than 1 / Gamma");
  }
  const auto [lo, hi] = std::minmax_element(
      data.begin(), data.end(), [](const auto& a, const auto& b) { return a.p_e < b.p_e; });
  if (hi->p_e - lo->p_e <= 1e-12) {
    throw Error(ErrorKind::DegenerateData, "conditioned populations are constant");
  }

  const double kappa = known.kappa();
  auto rss = [&](std::array<double, 2> x) {
    const cplx e{x[0], x[1]};
    double sum = 0.0;
    for (const auto& d : data) {
      const double r = d.p_e - conditioned_model(e, kappa, d.t);
      sum += static_cast<double>(d.n_kept) * r * r;
    }
    return sum;
  };

  const double scale = std::max(known.omega_ep(), 0.1);
  std::vector<std::array<double, 2>> starts;
  const double re_guess = 0.5 * dominant_frequency(data);
  starts.push_back({re_guess, 0.0});
  const double im_guess = -0.5 * settling_rate(data).value_or(known.omega_ep());
  starts.push_back({0.0, im_guess});
  if (options.omega_hint) {
    const ComplexEnergy e = half_splitting(known.with_omega(*options.omega_hint));
    starts.push_back({e.re, e.im});
  } else {
    starts.push_back({0.0, 0.0});
  }
  starts.push_back({0.5 * re_guess, 0.5 * im_guess});

  SimplexOptions simplex;
  simplex.initial_step = 0.1 * scale;
  SimplexResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& s : starts) {
    const SimplexResult r = minimize_simplex(rss, s, simplex);
    if (r.value < best.value) best = r;
  }
  if (!best.converged && std::isfinite(best.value)) {
    simplex.initial_step = 0.01 * scale;
    const SimplexResult r = minimize_simplex(rss, best.x, simplex);
    if (r.value <= best.value) best = r;
  }

  if (!best.converged && options.throw_if_not_converged) {
    throw Error(ErrorKind::NotConverged, "simplex criterion unmet after restarts");
  }
  FitResult fit;
  fit.energy = ComplexEnergy{std::abs(best.x[0]), -std::abs(best.x[1])};
  fit.residual_rss = best.value;
  fit.n_points_used = data.size();
  fit.converged = best.converged && std::isfinite(best.value);
  return fit;
}

SensitivityPoint sensitivity_from_fit(ComplexEnergy e, double delta_omega, double omega_true) {
  if (delta_omega == 0.0) {
    throw Error(ErrorKind::AtExceptionalPoint, "delta_omega must be nonzero");
  }
  return {omega_true, delta_omega, (e.re - e.im) / std::abs(delta_omega)};
}

std::string to_string(EpSide side) { return side == EpSide::AboveEP ? "above" : "below"; }

PowerLawFit fit_power_law(std::span<const SensitivityPoint> points, double omega_ep,
                          EpSide side) {
  if (!(omega_ep > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "power law needs omega_ep > 0");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& pt = points[i];
    const bool on_side = side == EpSide::AboveEP ? pt.delta_omega > 0.0 : pt.delta_omega < 0.0;
    if (!on_side) continue;
    if (!(pt.s > 0.0)) {
      throw Error(ErrorKind::NonPositiveS, "point " + std::to_string(i) + " has S <= 0", i);
    }
    xs.push_back(std::log(std::abs(pt.delta_omega / omega_ep)));
    ys.push_back(std::log(pt.s));
  }
  const std::size_t n = xs.size();
  if (n < 3) {
    throw Error(ErrorKind::InsufficientPoints,
                std::to_string(n) + " points " + to_string(side) + " the EP, need 3");
  }

  const double m = static_cast<double>(n);
  double x_mean = 0.0, y_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x_mean += xs[i];
    y_mean += ys[i];
  }
  x_mean /= m;
  y_mean /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
    sxy += (xs[i] - x_mean) * (ys[i] - y_mean);
  }
  if (!(sxx > 0.0)) {
    throw Error(ErrorKind::DegenerateData, "all points share the same |delta_omega|");
  }
  const double slope = sxy / sxx;
  const double intercept = y_mean - slope * x_mean;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (intercept + slope * xs[i]);
    rss += r * r;
  }
  const double s2 = rss / (m - 2.0);

  PowerLawFit fit;
  fit.a = std::exp(intercept);
  fit.b = slope;
  fit.stderr_b = std::sqrt(s2 / sxx);
  fit.stderr_a = fit.a * std::sqrt(s2 * (1.0 / m + x_mean * x_mean / sxx));
  fit.side = side;
  fit.n_points = n;
  return fit;
}

bool CampaignReport::all_converged() const noexcept {
  return std::all_of(points.begin(), points.end(),
                     [](const CampaignPoint& p) { return p.error.empty() && p.fit.converged; });
}

const PowerLawOutcome* CampaignReport::side(EpSide s) const noexcept {
  for (const auto& o : power_laws) {
    if (o.side == s) return &o;
  }
  return nullptr;
}

std::vector<double> default_campaign_offsets() {
  return {0.02, 0.04, 0.07, 0.12, 0.18, 0.25, 0.35, 0.5};
}

std::vector<double> campaign_omegas(const SystemParams& base, std::span<const double> offsets) {
  std::vector<double> sorted(offsets.begin(), offsets.end());
  std::sort(sorted.begin(), sorted.end());
  const double ep = base.omega_ep();
  std::vector<double> omegas;
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) omegas.push_back(ep * (1.0 - *it));
  for (double o : sorted) omegas.push_back(ep * (1.0 + o));
  return omegas;
}

CampaignReport run_sensing_campaign(std::span<const double> omegas, const SystemParams& base,
                                    const TimeGrid& grid, std::size_t shots, std::uint64_t seed,
                                    unsigned workers) {
  for (double omega : omegas) {
    if (half_splitting(base.with_omega(omega)).abs() < kEpTolerance) {
      throw Error(ErrorKind::AtExceptionalPoint,
                  "campaign omega " + std::to_string(omega) + " sits on the EP");
    }
  }

  CampaignReport report;
  report.kappa_q = base.kappa_q();
  report.kappa_p = base.kappa_p();
  report.omega_ep = base.omega_ep();
  report.t0 = grid.t0();
  report.t_max = grid.t_max();
  report.n_times = grid.size();
  report.shots = shots;
  report.seed = seed;
  report.points.resize(omegas.size());

  const KnownRates rates{base.kappa_q(), base.kappa_p()};
  const unsigned w = detail::resolve_workers(workers, omegas.size());
  detail::parallel_blocks(omegas.size(), w, [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      CampaignPoint& out = report.points[i];
      const SystemParams p = base.with_omega(omegas[i]);
      out.omega = omegas[i];
      out.sensitivity.omega_true = omegas[i];
      out.sensitivity.delta_omega = p.delta_omega();
      try {
        const auto records = simulate_measurements(p, grid, shots, stream_seed(seed, i));
        const auto data = condition_records(records);
        out.n_points_kept = data.size();
        FitOptions options;
        options.omega_hint = omegas[i];
        options.throw_if_not_converged = false;
        out.fit = fit_eigenenergy(data, rates, options);
        out.sensitivity = sensitivity_from_fit(out.fit.energy, p.delta_omega(), omegas[i]);
        if (!out.fit.converged) out.error = "NotConverged: simplex criterion unmet after restarts";
      } catch (const Error& e) {
        out.error = e.what();
      }
    }
  });

  for (EpSide side : {EpSide::BelowEP, EpSide::AboveEP}) {
    std::vector<SensitivityPoint> usable;
    bool any = false;
    for (const auto& pt : report.points) {
      const bool on_side = side == EpSide::AboveEP ? pt.sensitivity.delta_omega > 0.0
                                                   : pt.sensitivity.delta_omega < 0.0;
      if (!on_side) continue;
      any = true;
      if (pt.error.empty() && pt.fit.converged) usable.push_back(pt.sensitivity);
    }
    if (!any) continue;
    PowerLawOutcome outcome;
    outcome.side = side;
    try {
      outcome.fit = fit_power_law(usable, report.omega_ep, side);
    } catch (const Error& e) {
      outcome.error = e.what();
    }
    report.power_laws.push_back(outcome);
  }
  return report;
}

}  // namespace epsense

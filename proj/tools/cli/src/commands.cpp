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

#include "epsense/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "epsense/cli/csv.hpp"
#include "epsense/cli/svg.hpp"
#include "epsense/estimation.hpp"
#include "epsense/nh_core.hpp"
#include "epsense/trajectories.hpp"
#include "json.hpp"

namespace epsense::cli {

namespace {

using json = nlohmann::ordered_json;
using Cell = std::optional<double>;

constexpr int kSchemaVersion = 1;

std::optional<double> finite_or_empty(double v) {
  if (std::isfinite(v)) return v;
  return std::nullopt;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string stem_of(const std::string& out, const std::string& fallback) {
  std::filesystem::path p(out.empty() ? fallback : out);
  p.replace_extension();
  return p.string();
}

std::string output_path(const RunConfig& cfg, const std::string& base) {
  if (!cfg.out.empty()) return cfg.out;
  return base + (cfg.format == OutputFormat::Json ? ".json" : ".csv");
}

struct Table {
  std::string command;
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  std::string render(OutputFormat format) const {
    if (format == OutputFormat::Csv) {
      std::ostringstream o;
      CsvWriter w(o, header);
      for (const auto& r : rows) w.row(r);
      return o.str();
    }
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["rows"] = json::array();
    for (const auto& r : rows) {
      json row;
      for (std::size_t i = 0; i < header.size(); ++i) {
        row[header[i]] = r[i] ? json(*r[i]) : json(nullptr);
      }
      j["rows"].push_back(row);
    }
    return j.dump(2) + "\n";
  }
};

json params_json(const SystemParams& p) {
  json j;
  j["omega"] = p.omega();
  j["kappa_q"] = p.kappa_q();
  j["kappa_p"] = p.kappa_p();
  j["omega_ep"] = p.omega_ep();
  return j;
}

}  // namespace

int cmd_spectrum(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const SystemParams base = cfg.params();
  const std::vector<double> grid = cfg.omega_grid();
  const auto rows = spectrum_sweep(base, grid);

  Table t{"spectrum", {"omega", "delta_omega", "re_E", "im_E", "S_theory"}, {}};
  for (const auto& r : rows) t.rows.push_back({r.omega, r.delta_omega, r.re_e, r.im_e, r.s_theory});
  const std::string path = output_path(cfg, "spectrum");
  write_file(path, t.render(cfg.format));

  if (cfg.plot) {
    const double ep = base.omega_ep();
    const double scale = ep > 0.0 ? ep : 1.0;
    Series above{"above EP", {}, {}};
    Series below{"below EP", {}, {}};
    for (const auto& r : rows) {
      if (!r.s_theory) continue;
      Series& s = r.delta_omega > 0.0 ? above : below;
      s.x.push_back(std::abs(r.delta_omega) / scale);
      s.y.push_back(*r.s_theory);
    }
    std::reverse(below.x.begin(), below.x.end());
    std::reverse(below.y.begin(), below.y.end());
    const PlotSpec spec{"Sensitivity |dE/dOmega|", ep > 0.0 ? "|delta_omega / omega_ep|" : "|delta_omega|",
                        "S", true, true};
    write_file(stem_of(path, "spectrum") + ".svg", render_svg(spec, {above, below}));
  }
  log << "spectrum: " << rows.size() << " rows -> " << path << "\n";
  return kExitOk;
}

int cmd_evolve(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const SystemParams p = cfg.params();
  const TimeGrid grid = cfg.grid();
  const auto rho = integrate_master(p, embed_projector(PureState2::excited()), grid);

  Table t{"evolve", {"t", "p_e0", "p_g1", "p_g0", "cond_p_e", "cond_p_g1", "survival"}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double time = grid.at(i);
    const PureState2 psi = propagate_no_jump(p, PureState2::excited(), time);
    Cell ce;
    Cell cg;
    if (psi.norm_sq() > kNormFloor) {
      const ConditionedPopulations c = conditioned_populations(psi);
      ce = c.p_e;
      cg = c.p_g1;
    }
    t.rows.push_back({time, rho[i](basis::kE0, basis::kE0).real(),
                      rho[i](basis::kG1, basis::kG1).real(), rho[i](basis::kG0, basis::kG0).real(),
                      ce, cg, psi.norm_sq()});
  }
  const std::string path = output_path(cfg, "evolve");
  write_file(path, t.render(cfg.format));

  if (cfg.plot) {
    std::vector<Series> series;
    for (std::size_t col : {1u, 2u, 4u, 6u}) {
      Series s{t.header[col], {}, {}};
      for (const auto& r : t.rows) {
        s.x.push_back(*r[0]);
        s.y.push_back(r[col].value_or(std::numeric_limits<double>::quiet_NaN()));
      }
      series.push_back(std::move(s));
    }
    write_file(stem_of(path, "evolve") + ".svg",
               render_svg({"Populations", "t (us)", "probability", false, false}, series));
  }
  log << "evolve: " << grid.size() << " rows -> " << path << "\n";
  return kExitOk;
}

int cmd_trajectories(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const SystemParams p = cfg.params();
  const TimeGrid grid = cfg.grid();
  const EnsembleStats stats = run_ensemble(p, grid, cfg.n_traj, cfg.seed, cfg.workers);
  const double n = static_cast<double>(cfg.n_traj);

  Table t{"trajectories",
          {"t", "survival", "survival_theory", "z_survival", "cond_p_e", "cond_p_g1",
           "cond_p_e_theory", "rho_g0g0", "rho_e0e0", "rho_g1g1", "re_rho_g1e0", "im_rho_g1e0"},
          {}};
  json z_list = json::array();
  double max_z = 0.0;
  for (std::size_t k = 0; k < stats.times.size(); ++k) {
    const PureState2 psi = propagate_no_jump(p, PureState2::excited(), stats.times[k]);
    const double theory = psi.norm_sq();
    const double sigma = std::sqrt(theory * (1.0 - theory) / n);
    const double diff = stats.survival_fraction[k] - theory;
    const double z = sigma > 0.0 ? diff / sigma : (std::abs(diff) < 1e-12 ? 0.0 : INFINITY);
    max_z = std::max(max_z, std::abs(z));
    z_list.push_back(number_or_null(z));
    Cell cond_theory;
    if (theory > kNormFloor) cond_theory = conditioned_populations(psi).p_e;
    const Density3& rho = stats.rho_mean[k];
    using namespace basis;
    t.rows.push_back({stats.times[k], stats.survival_fraction[k], theory, finite_or_empty(z),
                      finite_or_empty(stats.conditioned_p_e[k]),
                      finite_or_empty(stats.conditioned_p_g1[k]), cond_theory,
                      rho(kG0, kG0).real(), rho(kE0, kE0).real(), rho(kG1, kG1).real(),
                      rho(kG1, kE0).real(), rho(kG1, kE0).imag()});
  }
  const std::string path = output_path(cfg, "trajectories");
  write_file(path, t.render(cfg.format));

  json summary;
  summary["schema_version"] = kSchemaVersion;
  summary["params"] = params_json(p);
  summary["n_traj"] = cfg.n_traj;
  summary["seed"] = cfg.seed;
  summary["qubit_decay_jumps"] = stats.qubit_decay_jumps;
  summary["photon_loss_jumps"] = stats.photon_loss_jumps;
  summary["final_survival"] = stats.survival_fraction.back();
  summary["max_abs_z_survival"] = number_or_null(max_z);
  summary["survival_within_3_sigma"] = max_z <= 3.0;
  summary["z_survival"] = z_list;
  const std::string summary_path = stem_of(path, "trajectories") + ".summary.json";
  write_file(summary_path, summary.dump(2) + "\n");

  if (cfg.plot) {
    Series sim{"survival (ensemble)", stats.times, stats.survival_fraction};
    Series th{"survival (no-jump norm)", stats.times, {}};
    for (const auto& r : t.rows) th.y.push_back(*r[2]);
    write_file(stem_of(path, "trajectories") + ".svg",
               render_svg({"No-jump survival", "t (us)", "fraction", false, false}, {sim, th}));
  }
  log << "trajectories: " << cfg.n_traj << " trajectories, max |z| = " << max_z << " -> " << path
      << ", " << summary_path << "\n";
  return kExitOk;
}

int cmd_sense(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const SystemParams base = cfg.params();
  const TimeGrid grid = cfg.grid();
  const std::vector<double> omegas = cfg.campaign_omegas();
  const CampaignReport report =
      run_sensing_campaign(omegas, base, grid, cfg.shots, cfg.seed, cfg.workers);
  const double ep = report.omega_ep;

  json j;
  j["schema_version"] = kSchemaVersion;
  j["kappa_q"] = report.kappa_q;
  j["kappa_p"] = report.kappa_p;
  j["omega_ep"] = ep;
  j["time_grid"] = {{"t0", report.t0}, {"t_max", report.t_max}, {"n_points", report.n_times}};
  j["shots"] = report.shots;
  j["seed"] = report.seed;
  j["points"] = json::array();
  for (const auto& pt : report.points) {
    json e;
    e["omega"] = pt.omega;
    e["delta_omega"] = pt.sensitivity.delta_omega;
    e["re_E"] = number_or_null(pt.fit.energy.re);
    e["im_E"] = number_or_null(pt.fit.energy.im);
    e["S"] = pt.error.empty() ? number_or_null(pt.sensitivity.s) : json(nullptr);
    e["rss"] = number_or_null(pt.fit.residual_rss);
    e["converged"] = pt.error.empty() && pt.fit.converged;
    e["n_times_used"] = pt.n_points_kept;
    if (!pt.error.empty()) e["error"] = pt.error;
    j["points"].push_back(e);
  }
  j["power_laws"] = json::array();
  bool power_law_failed = false;
  for (const auto& pl : report.power_laws) {
    json e;
    e["side"] = to_string(pl.side);
    if (pl.fit) {
      e["A"] = pl.fit->a;
      e["B"] = pl.fit->b;
      e["stderr_A"] = number_or_null(pl.fit->stderr_a);
      e["stderr_B"] = number_or_null(pl.fit->stderr_b);
      e["n_points"] = pl.fit->n_points;
    } else {
      e["error"] = pl.error;
      power_law_failed = true;
    }
    j["power_laws"].push_back(e);
  }

  const std::string stem = stem_of(cfg.out, "sense");
  write_file(stem + ".json", j.dump(2) + "\n");

  std::ostringstream csv;
  {
    CsvWriter w(csv, {"abs_rel_delta_omega", "S", "delta_omega", "omega"});
    for (const auto& pt : report.points) {
      const double x = ep > 0.0 ? std::abs(pt.sensitivity.delta_omega) / ep : NAN;
      const Cell s = pt.error.empty() ? finite_or_empty(pt.sensitivity.s) : Cell{};
      w.row({finite_or_empty(x), s, pt.sensitivity.delta_omega, pt.omega});
    }
  }
  write_file(stem + ".csv", csv.str());

  if (cfg.plot) {
    std::vector<Series> series;
    for (EpSide side : {EpSide::AboveEP, EpSide::BelowEP}) {
      Series data{"S " + to_string(side) + " EP", {}, {}};
      for (const auto& pt : report.points) {
        const bool on = side == EpSide::AboveEP ? pt.sensitivity.delta_omega > 0.0
                                                : pt.sensitivity.delta_omega < 0.0;
        if (!on || !pt.error.empty()) continue;
        data.x.push_back(std::abs(pt.sensitivity.delta_omega) / ep);
        data.y.push_back(pt.sensitivity.s);
      }
      std::vector<std::size_t> idx(data.x.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return data.x[a] < data.x[b]; });
      Series sorted{data.name, {}, {}};
      for (auto i : idx) {
        sorted.x.push_back(data.x[i]);
        sorted.y.push_back(data.y[i]);
      }
      if (sorted.x.empty()) continue;
      series.push_back(sorted);
      const PowerLawOutcome* pl = report.side(side);
      if (pl && pl->fit) {
        Series fit{"A|x|^B " + to_string(side), {sorted.x.front(), sorted.x.back()}, {}};
        for (double x : fit.x) fit.y.push_back(pl->fit->a * std::pow(x, pl->fit->b));
        series.push_back(fit);
      }
    }
    write_file(stem + ".svg",
               render_svg({"EP-enhanced sensitivity", "|delta_omega / omega_ep|", "S", true, true},
                          series));
  }

  for (const auto& pl : report.power_laws) {
    if (pl.fit) {
      log << "sense: " << to_string(pl.side) << " EP: A = " << pl.fit->a << ", B = " << pl.fit->b
          << "\n";
    } else {
      log << "sense: " << to_string(pl.side) << " EP: " << pl.error << "\n";
    }
  }
  log << "sense: report -> " << stem << ".json, points -> " << stem << ".csv\n";
  return report.all_converged() && !power_law_failed ? kExitOk : kExitFit;
}

int cmd_plot(const PlotRequest& request, std::ostream& log) {
  const CsvTable table = parse_csv(read_file(request.input));
  if (table.rows.empty()) throw ConfigError("CSV '" + request.input + "' has no data rows");
  if (request.y_columns.empty()) throw ConfigError("plot needs at least one y column");

  auto parse_cell = [&](const std::string& s, std::size_t row) {
    if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      throw ConfigError("CSV row " + std::to_string(row + 2) + ": '" + s + "' is not a number");
    }
    return v;
  };

  const std::size_t xc = table.column(request.x_column);
  std::vector<Series> series;
  for (const auto& name : request.y_columns) {
    const std::size_t yc = table.column(name);
    Series s{name, {}, {}};
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      s.x.push_back(parse_cell(table.rows[r][xc], r));
      s.y.push_back(parse_cell(table.rows[r][yc], r));
    }
    series.push_back(std::move(s));
  }
  const std::string out = request.output.empty() ? "plot.svg" : request.output;
  const std::string y_label = request.y_columns.size() == 1 ? request.y_columns.front() : "value";
  write_file(out, render_svg({request.title, request.x_column, y_label, request.log_x, request.log_y},
                             series));
  log << "plot: " << series.size() << " series -> " << out << "\n";
  return kExitOk;
}

namespace {

// Registers the shared run options on a subcommand. Values land in `staged`;
// apply() copies only the options that were actually given.
class RunOptions {
 public:
  explicit RunOptions(CLI::App* app) {
    app->add_option("--config", config_path_, "JSON config file");
    add(app, "--seed", staged_.seed, [](RunConfig& c, const RunConfig& s) { c.seed = s.seed; });
    add(app, "--out", staged_.out, [](RunConfig& c, const RunConfig& s) { c.out = s.out; });
    add(app, "--omega", staged_.omega, [](RunConfig& c, const RunConfig& s) { c.omega = s.omega; });
    add(app, "--kappa-q", staged_.kappa_q,
        [](RunConfig& c, const RunConfig& s) { c.kappa_q = s.kappa_q; });
    add(app, "--kappa-p", staged_.kappa_p,
        [](RunConfig& c, const RunConfig& s) { c.kappa_p = s.kappa_p; });
    add(app, "--t0", staged_.t0, [](RunConfig& c, const RunConfig& s) { c.t0 = s.t0; });
    add(app, "--t-max", staged_.t_max, [](RunConfig& c, const RunConfig& s) { c.t_max = s.t_max; });
    add(app, "--n-points", staged_.n_points,
        [](RunConfig& c, const RunConfig& s) { c.n_points = s.n_points; });
    add(app, "--shots", staged_.shots, [](RunConfig& c, const RunConfig& s) { c.shots = s.shots; });
    add(app, "--n-traj", staged_.n_traj,
        [](RunConfig& c, const RunConfig& s) { c.n_traj = s.n_traj; });
    add(app, "--workers", staged_.workers,
        [](RunConfig& c, const RunConfig& s) { c.workers = s.workers; });
    add(app, "--omega-min", staged_.omega_min,
        [](RunConfig& c, const RunConfig& s) { c.omega_min = s.omega_min; });
    add(app, "--omega-max", staged_.omega_max,
        [](RunConfig& c, const RunConfig& s) { c.omega_max = s.omega_max; });
    add(app, "--omega-count", staged_.omega_count,
        [](RunConfig& c, const RunConfig& s) { c.omega_count = s.omega_count; });
    add(app, "--omegas", staged_.omegas,
        [](RunConfig& c, const RunConfig& s) { c.omegas = s.omegas; })
        ->delimiter(',');
    add(app, "--offsets", staged_.offsets,
        [](RunConfig& c, const RunConfig& s) { c.offsets = s.offsets; })
        ->delimiter(',');
    format_opt_ = app->add_option("--format", format_, "csv or json")
                      ->check(CLI::IsMember({"csv", "json"}));
    plot_opt_ = app->add_flag("--plot", "also write an SVG plot");
  }

  RunConfig resolve() const {
    RunConfig cfg;
    if (!config_path_.empty()) apply_config_file(cfg, config_path_);
    for (const auto& [opt, copy] : setters_) {
      if (opt->count() > 0) copy(cfg, staged_);
    }
    if (format_opt_->count() > 0) cfg.format = format_ == "json" ? OutputFormat::Json : OutputFormat::Csv;
    if (plot_opt_->count() > 0) cfg.plot = true;
    return cfg;
  }

 private:
  using Setter = std::function<void(RunConfig&, const RunConfig&)>;

  template <class T>
  CLI::Option* add(CLI::App* app, const std::string& name, T& target, Setter copy) {
    CLI::Option* opt = app->add_option(name, target);
    setters_.emplace_back(opt, std::move(copy));
    return opt;
  }

  RunConfig staged_;
  std::string config_path_;
  std::string format_;
  CLI::Option* format_opt_ = nullptr;
  CLI::Option* plot_opt_ = nullptr;
  std::vector<std::pair<CLI::Option*, Setter>> setters_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exceptional-point sensing simulator for a dissipative qubit-resonator pair"};
  app.name("epsense");
  bool print_defaults = false;
  app.add_flag("--print-defaults", print_defaults, "print the default JSON config and exit");

  CLI::App* spectrum = app.add_subcommand("spectrum", "E, EP and |dE/dOmega| over an Omega grid");
  CLI::App* evolve = app.add_subcommand("evolve", "master-equation and no-jump population traces");
  CLI::App* traj = app.add_subcommand("trajectories", "quantum-jump ensemble with post-selection");
  CLI::App* sense = app.add_subcommand("sense", "synthetic sensing campaign and power-law fits");
  CLI::App* plot = app.add_subcommand("plot", "SVG line chart from CSV columns");
  app.require_subcommand(0, 1);

  RunOptions spectrum_opts(spectrum);
  RunOptions evolve_opts(evolve);
  RunOptions traj_opts(traj);
  RunOptions sense_opts(sense);

  PlotRequest plot_req;
  std::string y_spec;
  plot->add_option("input", plot_req.input, "input CSV")->required();
  plot->add_option("--out", plot_req.output, "output SVG");
  plot->add_option("--x", plot_req.x_column, "x column")->required();
  plot->add_option("--y", y_spec, "comma-separated y columns")->required();
  bool loglog = false;
  plot->add_flag("--loglog", loglog, "logarithmic x and y axes");
  plot->add_flag("--logx", plot_req.log_x, "logarithmic x axis");
  plot->add_flag("--logy", plot_req.log_y, "logarithmic y axis");
  plot->add_option("--title", plot_req.title, "chart title");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "epsense: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (print_defaults) {
      out << defaults_json();
      return kExitOk;
    }
    if (spectrum->parsed()) return cmd_spectrum(spectrum_opts.resolve(), out);
    if (evolve->parsed()) return cmd_evolve(evolve_opts.resolve(), out);
    if (traj->parsed()) return cmd_trajectories(traj_opts.resolve(), out);
    if (sense->parsed()) return cmd_sense(sense_opts.resolve(), out);
    if (plot->parsed()) {
      std::stringstream ss(y_spec);
      for (std::string col; std::getline(ss, col, ',');) {
        if (!col.empty()) plot_req.y_columns.push_back(col);
      }
      if (loglog) plot_req.log_x = plot_req.log_y = true;
      return cmd_plot(plot_req, out);
    }
    out << app.help();
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "epsense: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    err << "epsense: I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "epsense: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::NegativeRate:
      case ErrorKind::NonFinite:
      case ErrorKind::InvalidArgument:
      case ErrorKind::AtExceptionalPoint:
        return kExitConfig;
      case ErrorKind::NotConverged:
      case ErrorKind::DegenerateData:
      case ErrorKind::InsufficientPoints:
      case ErrorKind::NonPositiveS:
      case ErrorKind::InsufficientSurvivors:
        return kExitFit;
      default:
        return kExitFailure;
    }
  }
}

}  // namespace epsense::cli

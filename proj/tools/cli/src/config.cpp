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

#include "epsense/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "epsense/estimation.hpp"
#include "json.hpp"

namespace epsense::cli {

namespace {

using json = nlohmann::ordered_json;

json to_json(const RunConfig& c) {
  json j;
  j["omega"] = c.omega;
  j["kappa_q"] = c.kappa_q;
  j["kappa_p"] = c.kappa_p;
  j["t0"] = c.t0;
  j["t_max"] = c.t_max;
  j["n_points"] = c.n_points;
  j["shots"] = c.shots;
  j["n_traj"] = c.n_traj;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["omega_min"] = c.omega_min;
  j["omega_max"] = c.omega_max;
  j["omega_count"] = c.omega_count;
  j["omegas"] = c.omegas;
  j["offsets"] = c.offsets;
  j["out"] = c.out;
  j["format"] = c.format == OutputFormat::Json ? "json" : "csv";
  j["plot"] = c.plot;
  return j;
}

template <class T>
void read(const json& j, const char* key, T& dst) {
  if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
    if (!j.at(key).is_number_unsigned()) {
      throw ConfigError(std::string("config key '") + key + "' must be a non-negative integer");
    }
  }
  try {
    dst = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

SystemParams RunConfig::params() const {
  try {
    return make_params(omega, kappa_q, kappa_p);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

TimeGrid RunConfig::grid() const {
  try {
    return TimeGrid(t0, t_max, n_points);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

std::vector<double> RunConfig::omega_grid() const {
  if (!omegas.empty()) return omegas;
  if (omega_count == 1) return {omega_min};
  std::vector<double> grid(omega_count);
  for (std::size_t i = 0; i < omega_count; ++i) {
    grid[i] = omega_min + (omega_max - omega_min) * static_cast<double>(i) /
                              static_cast<double>(omega_count - 1);
  }
  return grid;
}

std::vector<double> RunConfig::campaign_omegas() const {
  if (!omegas.empty()) return omegas;
  return epsense::campaign_omegas(params(), offsets);
}

void RunConfig::validate() const {
  params();
  grid();
  if (shots == 0) throw ConfigError("shots must be at least 1");
  if (n_traj == 0) throw ConfigError("n_traj must be at least 1");
  if (!std::isfinite(omega_min) || !std::isfinite(omega_max) || omega_min < 0.0 ||
      omega_max < omega_min) {
    throw ConfigError("omega grid needs 0 <= omega_min <= omega_max");
  }
  if (omega_count == 0) throw ConfigError("omega_count must be at least 1");
  for (double o : omegas) {
    if (!std::isfinite(o) || o < 0.0) throw ConfigError("omegas must be finite and >= 0");
  }
  for (double o : offsets) {
    if (!std::isfinite(o) || !(o > 0.0) || o >= 1.0) {
      throw ConfigError("offsets must lie in (0, 1)");
    }
  }
}

std::string defaults_json() { return to_json(RunConfig{}).dump(2) + "\n"; }

void apply_json(RunConfig& cfg, const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  const json known = to_json(RunConfig{});
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  auto maybe = [&](const char* key, auto& dst) {
    if (j.contains(key)) read(j, key, dst);
  };
  maybe("omega", cfg.omega);
  maybe("kappa_q", cfg.kappa_q);
  maybe("kappa_p", cfg.kappa_p);
  maybe("t0", cfg.t0);
  maybe("t_max", cfg.t_max);
  maybe("n_points", cfg.n_points);
  maybe("shots", cfg.shots);
  maybe("n_traj", cfg.n_traj);
  maybe("seed", cfg.seed);
  maybe("workers", cfg.workers);
  maybe("omega_min", cfg.omega_min);
  maybe("omega_max", cfg.omega_max);
  maybe("omega_count", cfg.omega_count);
  maybe("omegas", cfg.omegas);
  maybe("offsets", cfg.offsets);
  maybe("out", cfg.out);
  maybe("plot", cfg.plot);
  if (j.contains("format")) {
    std::string f;
    read(j, "format", f);
    if (f == "csv") {
      cfg.format = OutputFormat::Csv;
    } else if (f == "json") {
      cfg.format = OutputFormat::Json;
    } else {
      throw ConfigError("format must be 'csv' or 'json'");
    }
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_json(cfg, ss.str());
}

}  // namespace epsense::cli

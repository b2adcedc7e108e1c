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
#include <stdexcept>
#include <string>
#include <vector>

#include "epsense/dynamics.hpp"
#include "epsense/model.hpp"

namespace epsense::cli {

/// Raised for anything wrong with user-supplied configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an input or output file cannot be read or written (exit code 3).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

/// Every knob of every command. Defaults use kappa_q = 0.07, kappa_p = 5
/// with the coupling placed at the exceptional point.
struct RunConfig {
  double omega = 1.2325;
  double kappa_q = 0.07;
  double kappa_p = 5.0;

  double t0 = 0.0;
  double t_max = 2.0;
  std::size_t n_points = 81;

  std::size_t shots = 3000;
  std::size_t n_traj = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 0;

  // Spectrum grid; `omegas`, when non-empty, replaces it (and the campaign
  // grid built from `offsets` for `sense`).
  double omega_min = 0.0;
  double omega_max = 2.5;
  std::size_t omega_count = 201;
  std::vector<double> omegas;
  std::vector<double> offsets{0.02, 0.04, 0.07, 0.12, 0.18, 0.25, 0.35, 0.5};

  std::string out;
  OutputFormat format = OutputFormat::Csv;
  bool plot = false;

  SystemParams params() const;
  TimeGrid grid() const;
  /// The spectrum sweep grid.
  std::vector<double> omega_grid() const;
  /// Campaign couplings for `sense`.
  std::vector<double> campaign_omegas() const;

  /// Throws ConfigError on any invalid value.
  void validate() const;
};

/// JSON document with every key and its default value.
std::string defaults_json();

/// Overlays the keys of a JSON config document onto `cfg`. Unknown keys and
/// type mismatches throw ConfigError.
void apply_json(RunConfig& cfg, const std::string& text);

/// Reads and applies a config file. Throws IoError if it cannot be read.
void apply_config_file(RunConfig& cfg, const std::string& path);

}  // namespace epsense::cli

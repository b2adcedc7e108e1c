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

#include <ostream>
#include <string>
#include <vector>

#include "epsense/cli/config.hpp"

namespace epsense::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitIo = 3,
  kExitFit = 4,
};

int cmd_spectrum(const RunConfig& cfg, std::ostream& log);
int cmd_evolve(const RunConfig& cfg, std::ostream& log);
int cmd_trajectories(const RunConfig& cfg, std::ostream& log);
int cmd_sense(const RunConfig& cfg, std::ostream& log);

struct PlotRequest {
  std::string input;
  std::string output;
  std::string x_column;
  std::vector<std::string> y_columns;
  bool log_x = false;
  bool log_y = false;
  std::string title;
};

int cmd_plot(const PlotRequest& request, std::ostream& log);

/// Full command-line entry point; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epsense::cli

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

#include <string>
#include <vector>

namespace epsense::cli {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
};

inline constexpr int kCanvasWidth = 800;
inline constexpr int kCanvasHeight = 600;

/// Deterministic SVG line chart: one polyline per contiguous run of drawable
/// points in each series. Points that are non-finite, or non-positive on a
/// log axis, split the line.
std::string render_svg(const PlotSpec& spec, const std::vector<Series>& series);

}  // namespace epsense::cli

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

#include <array>
#include <cstddef>
#include <functional>
#include <span>

namespace epsense {

struct SimplexOptions {
  double initial_step = 0.1;
  // Converged once the simplex diameter and the spread of objective values
  // across vertices are both below these thresholds.
  double diameter_tol = 1e-9;
  double value_tol = 1e-12;
  std::size_t max_evaluations = 20000;
};

struct SimplexResult {
  std::array<double, 2> x{};
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Nelder-Mead minimization in two dimensions with the standard
/// reflection / expansion / contraction / shrink coefficients (1, 2, 1/2, 1/2).
/// Non-finite objective values are treated as +infinity.
SimplexResult minimize_simplex(const std::function<double(std::array<double, 2>)>& f,
                               std::array<double, 2> start, const SimplexOptions& options = {});

}  // namespace epsense

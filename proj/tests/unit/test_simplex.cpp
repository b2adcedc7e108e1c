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

#include "doctest.h"
#include "epsense/simplex.hpp"

using namespace epsense;

TEST_CASE("simplex finds the minimum of a quadratic") {
  const auto f = [](std::array<double, 2> x) {
    return (x[0] - 1.5) * (x[0] - 1.5) + 10.0 * (x[1] + 0.25) * (x[1] + 0.25);
  };
  const SimplexResult r = minimize_simplex(f, {0.0, 0.0});
  CHECK(r.converged);
  CHECK(r.x[0] == doctest::Approx(1.5).epsilon(1e-8));
  CHECK(r.x[1] == doctest::Approx(-0.25).epsilon(1e-8));
}

TEST_CASE("simplex handles the Rosenbrock valley") {
  const auto f = [](std::array<double, 2> x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  const SimplexResult r = minimize_simplex(f, {-1.2, 1.0});
  CHECK(r.converged);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("simplex treats non-finite values as infinite") {
  const auto f = [](std::array<double, 2> x) {
    if (x[0] < 0.0) return std::nan("");
    return (x[0] - 0.5) * (x[0] - 0.5) + x[1] * x[1];
  };
  const SimplexResult r = minimize_simplex(f, {0.05, 0.3});
  CHECK(r.converged);
  CHECK(r.x[0] == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("simplex reports non-convergence when the budget runs out") {
  SimplexOptions options;
  options.max_evaluations = 10;
  const auto f = [](std::array<double, 2> x) { return x[0] * x[0] + x[1] * x[1]; };
  const SimplexResult r = minimize_simplex(f, {5.0, 5.0}, options);
  CHECK_FALSE(r.converged);
  CHECK(r.evaluations <= 14);
}

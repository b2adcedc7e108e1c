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

#include "epsense/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace epsense {

namespace {

using Point = std::array<double, 2>;

Point lerp(const Point& a, const Point& b, double t) {
  return {a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
}

double distance(const Point& a, const Point& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

}  // namespace

SimplexResult minimize_simplex(const std::function<double(std::array<double, 2>)>& f,
                               std::array<double, 2> start, const SimplexOptions& options) {
  std::size_t evals = 0;
  auto eval = [&](const Point& x) {
    ++evals;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  std::array<Point, 3> x{start, start, start};
  x[1][0] += options.initial_step;
  x[2][1] += options.initial_step;
  std::array<double, 3> fx{eval(x[0]), eval(x[1]), eval(x[2])};

  SimplexResult result;
  while (evals < options.max_evaluations) {
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fx[a] < fx[b]; });
    const int best = order[0];
    const int mid = order[1];
    const int worst = order[2];

    const double diameter = std::max({distance(x[0], x[1]), distance(x[0], x[2]),
                                      distance(x[1], x[2])});
    const double spread = fx[worst] - fx[best];
    if (diameter < options.diameter_tol && spread <= options.value_tol * (1.0 + std::abs(fx[best]))) {
      result.converged = true;
      break;
    }

    const Point centroid = lerp(x[best], x[mid], 0.5);
    const Point reflected = lerp(x[worst], centroid, 2.0);
    const double fr = eval(reflected);

    if (fr < fx[best]) {
      const Point expanded = lerp(x[worst], centroid, 3.0);
      const double fe = eval(expanded);
      if (fe < fr) {
        x[worst] = expanded;
        fx[worst] = fe;
      } else {
        x[worst] = reflected;
        fx[worst] = fr;
      }
      continue;
    }
    if (fr < fx[mid]) {
      x[worst] = reflected;
      fx[worst] = fr;
      continue;
    }

    // Contraction: outside if the reflection improved on the worst vertex.
    const bool outside = fr < fx[worst];
    const Point contracted = outside ? lerp(centroid, reflected, 0.5)
                                     : lerp(centroid, x[worst], 0.5);
    const double fc = eval(contracted);
    if (fc < (outside ? fr : fx[worst])) {
      x[worst] = contracted;
      fx[worst] = fc;
      continue;
    }

    for (int i : {mid, worst}) {
      x[i] = lerp(x[best], x[i], 0.5);
      fx[i] = eval(x[i]);
    }
  }

  const auto best_it = std::min_element(fx.begin(), fx.end());
  const auto best = static_cast<std::size_t>(best_it - fx.begin());
  result.x = x[best];
  result.value = fx[best];
  result.evaluations = evals;
  return result;
}

}  // namespace epsense

// Copyright 2026 The sqzfock Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sqzfock/error.hpp"
#include "sqzfock/protocol.hpp"
#include "sqzfock/search.hpp"

namespace sqzfock {

SearchResult grid_golden_maximize(const std::function<std::optional<double>(double)>& f, double lo,
                                  double hi, int grid_points, double tolerance) {
  if (!(hi > lo) || grid_points < 1 || !(tolerance > 0.0)) {
    fail(ErrorKind::invalid_argument, "grid_golden_maximize: bad interval or grid");
  }
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  SearchResult best{0.0, kNegInf, 0};
  auto eval = [&](double x) {
    ++best.evaluations;
    const auto v = f(x);
    return v ? *v : kNegInf;
  };
  auto keep = [&](double x, double value) {
    if (value > best.value || (value == best.value && x < best.argmax)) {
      best.argmax = x;
      best.value = value;
    }
  };

  const double h = (hi - lo) / (grid_points + 1);
  std::vector<double> grid(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) grid[static_cast<std::size_t>(i)] = eval(lo + h * (i + 1));
  const double top = *std::max_element(grid.begin(), grid.end());
  if (top == kNegInf) fail(ErrorKind::infeasible, "grid_golden_maximize: objective undefined on every grid point");
  int best_index = 0;
  while (grid[static_cast<std::size_t>(best_index)] < top - kSearchTieTolerance) ++best_index;
  keep(lo + h * (best_index + 1), grid[static_cast<std::size_t>(best_index)]);

  double a = lo + h * best_index;
  double b = lo + h * (best_index + 2);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  keep(c, fc);
  keep(d, fd);
  while (b - a > tolerance) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
      keep(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
      keep(d, fd);
    }
  }
  return best;
}

OptimalEntangler optimal_entangler(const SFTarget& target, EntanglerKind kind, const QuadratureConfig& cfg) {
  const double hi = kind == EntanglerKind::beam_splitter ? 1.0 : std::exp(target.squeezing());
  auto objective = [&](double x) -> std::optional<double> {
    try {
      const EntanglerSpec e = EntanglerSpec::make(kind, x);
      const InputSolution sol = solve_inputs(e, target);
      return heralding_probability(e, sol.r1, sol.r2, target.n(), cfg);
    } catch (const Error& err) {
      if (err.kind() == ErrorKind::infeasible || err.kind() == ErrorKind::invalid_params ||
          err.kind() == ErrorKind::singular || err.kind() == ErrorKind::invalid_argument) {
        return std::nullopt;
      }
      throw;
    }
  };
  SearchResult found;
  try {
    found = grid_golden_maximize(objective, 0.0, hi, kOptimizerGridPoints, kOptimizerTolerance);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::infeasible) throw;
    fail(ErrorKind::infeasible, "no feasible " + std::string(to_string(kind)) + " entangler for n=" +
                                    std::to_string(target.n()) + ", R=" + std::to_string(target.squeezing()));
  }
  const EntanglerSpec e = EntanglerSpec::make(kind, found.argmax);
  return OptimalEntangler{e, solve_inputs(e, target), found.value};
}

}  // namespace sqzfock

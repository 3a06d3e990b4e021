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

// Deterministic one-dimensional maximization: coarse grid, then golden section.

#pragma once

#include <functional>
#include <optional>

namespace sqzfock {

struct SearchResult {
  double argmax = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Grid values this close to the best one count as ties.
inline constexpr double kSearchTieTolerance = 1e-9;

/// Maximizes f over the open interval (lo, hi). f returns nullopt where it is
/// undefined. The grid has `grid_points` interior points; the best one (the
/// leftmost on ties) is refined by golden section on its neighbouring bracket until
/// the bracket is narrower than `tolerance`. Throws ErrorKind::infeasible if f
/// is undefined at every grid point.
SearchResult grid_golden_maximize(const std::function<std::optional<double>(double)>& f, double lo,
                                  double hi, int grid_points, double tolerance);

}  // namespace sqzfock

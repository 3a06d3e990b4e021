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

// Beam-splitter branch of solve_inputs: no closed form is available, so the two
// universal conditions are solved for (r1, r2) by damped Newton iteration.

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sqzfock/error.hpp"
#include "sqzfock/protocol.hpp"

namespace sqzfock::detail {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kMaxStep = 0.5;
constexpr double kJacobianStep = 1e-6;
constexpr double kMaxSqueezing = 30.0;

using Vec2 = std::array<double, 2>;

struct Conditions {
  double t;
  double scale;  // e^{2R}

  // Both conditions with denominators cleared, so a = 1 is not a pole.
  Vec2 operator()(const Vec2& r) const {
    const double u = std::exp(2.0 * r[0]);
    const double v = std::exp(2.0 * r[1]);
    const double a = u * (1.0 - t) + v * t;
    const double b = std::sqrt(t * (1.0 - t)) * (u - v);
    const double d = u * t + v * (1.0 - t);
    return {(d * (a + 1.0) - b * b - scale * (a + 1.0)) / (scale * (a + 1.0)),
            (b * b - scale * (a - 1.0) * (a + 1.0)) / (scale * (a + 1.0) * (a + 1.0))};
  }
};

double norm2(const Vec2& f) { return f[0] * f[0] + f[1] * f[1]; }

struct NewtonResult {
  Vec2 r;
  double residual;  // scaled condition norm where the iteration stopped
  bool converged;
};

NewtonResult newton(const Conditions& f, Vec2 r) {
  Vec2 fr = f(r);
  auto stop = [&](bool converged) { return NewtonResult{r, std::sqrt(norm2(fr)), converged}; };
  for (int it = 0; it < kMaxIterations; ++it) {
    if (norm2(fr) < 1e-30) return stop(true);
    double jac[2][2];
    for (int k = 0; k < 2; ++k) {
      Vec2 hi = r, lo = r;
      hi[k] += kJacobianStep;
      lo[k] -= kJacobianStep;
      const Vec2 fh = f(hi), fl = f(lo);
      jac[0][k] = (fh[0] - fl[0]) / (2.0 * kJacobianStep);
      jac[1][k] = (fh[1] - fl[1]) / (2.0 * kJacobianStep);
    }
    const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    if (!std::isfinite(det) || std::abs(det) < 1e-300) return stop(false);
    Vec2 step{(jac[1][1] * fr[0] - jac[0][1] * fr[1]) / det, (jac[0][0] * fr[1] - jac[1][0] * fr[0]) / det};
    const double len = std::hypot(step[0], step[1]);
    if (len > kMaxStep) {
      step[0] *= kMaxStep / len;
      step[1] *= kMaxStep / len;
    }
    // Backtrack until the residual norm decreases.
    double lambda = 1.0;
    bool improved = false;
    for (int k = 0; k < 40; ++k) {
      const Vec2 trial{r[0] - lambda * step[0], r[1] - lambda * step[1]};
      const Vec2 ft = f(trial);
      if (std::isfinite(ft[0]) && std::isfinite(ft[1]) && norm2(ft) < norm2(fr)) {
        r = trial;
        fr = ft;
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved) return stop(norm2(fr) < 1e-26);
    if (std::abs(r[0]) > kMaxSqueezing || std::abs(r[1]) > kMaxSqueezing) return stop(false);
  }
  return stop(norm2(fr) < 1e-26);
}

}  // namespace

InputSolution solve_beam_splitter(double t, const SFTarget& target) {
  const double big_r = target.squeezing();
  const EntanglerSpec spec = EntanglerSpec::beam_splitter(t);
  const Conditions conditions{t, std::exp(2.0 * big_r)};

  const double center = 0.5 * big_r;
  const double spread = 0.5 * std::abs(big_r) + 1.0;
  const std::array<double, 3> offsets{-spread, 0.0, spread};

  std::optional<InputSolution> best;
  double best_extent = std::numeric_limits<double>::infinity();
  double closest = std::numeric_limits<double>::infinity();
  Vec2 closest_at{0.0, 0.0};
  double stalled = std::numeric_limits<double>::infinity();
  Vec2 stalled_at{0.0, 0.0};

  for (double o1 : offsets) {
    for (double o2 : offsets) {
      const Vec2 seed{center + o1, center + o2};
      const NewtonResult root = newton(conditions, seed);
      if (std::isfinite(root.residual) && root.residual < stalled) {
        stalled = root.residual;
        stalled_at = root.r;
      }
      if (!root.converged) continue;
      InputSolution sol;
      sol.r1 = root.r[0];
      sol.r2 = root.r[1];
      try {
        sol.residuals = universal_residuals(entangler_to_tmeg(spec, sol.r1, sol.r2), big_r);
      } catch (const Error&) {
        continue;  // invalid or singular point
      }
      const double defect = sol.residuals.max_abs();
      if (defect < closest) {
        closest = defect;
        closest_at = root.r;
      }
      if (defect >= kResidualTolerance) continue;
      const double extent = std::max(std::abs(sol.r1), std::abs(sol.r2));
      if (extent < best_extent - 1e-12) {
        best_extent = extent;
        best = sol;
      }
    }
  }
  if (!best) {
    char buf[256];
    if (std::isfinite(closest)) {
      std::snprintf(buf, sizeof buf,
                    "no beam-splitter solution for t=%.9g, R=%.9g; smallest residual %.3g at (r1, r2) = (%.6g, %.6g)",
                    t, big_r, closest, closest_at[0], closest_at[1]);
    } else {
      std::snprintf(buf, sizeof buf,
                    "no beam-splitter solution for t=%.9g, R=%.9g; Newton stalled from all seeds, smallest scaled "
                    "residual %.3g at (r1, r2) = (%.6g, %.6g)",
                    t, big_r, stalled, stalled_at[0], stalled_at[1]);
    }
    fail(ErrorKind::infeasible, buf);
  }
  return *best;
}

}  // namespace sqzfock::detail

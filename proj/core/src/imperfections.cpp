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
#include <string>

#include "sqzfock/error.hpp"
#include "sqzfock/imperfections.hpp"
#include "sqzfock/parallel.hpp"

namespace sqzfock {

namespace {

// Beyond this many standard deviations the kernel is below e^{-72}.
constexpr double kKernelReach = 12.0;
constexpr double kZeroSqueezing = 1e-12;

struct LossAxis {
  std::vector<double> nodes;
  std::vector<double> weights;  // quadrature weight times density
};

LossAxis loss_axis(double r_opt, double mu, int order) {
  if (std::abs(r_opt) < kZeroSqueezing) return {{r_opt}, {1.0}};
  const double sigma = std::abs(mu * r_opt);
  double lo = std::min(0.0, r_opt);
  double hi = std::max(0.0, r_opt);
  if (r_opt > 0.0) {
    lo = std::max(lo, r_opt - kKernelReach * sigma);
  } else {
    hi = std::min(hi, r_opt + kKernelReach * sigma);
  }
  const QuadratureRule rule = gauss_legendre_rule(order, lo, hi);
  LossAxis axis;
  for (std::size_t i = 0; i < rule.nodes().size(); ++i) {
    const double r = rule.nodes()[i];
    axis.nodes.push_back(r);
    axis.weights.push_back(rule.weights()[i] * loss_pdf(r, r_opt, mu));
  }
  return axis;
}

struct PointMetrics {
  double probability = 0.0;
  double fidelity = 0.0;
};

PointMetrics point_metrics(const EntanglerSpec& e, double r1, double r2, const SFTarget& target,
                           const QuadratureConfig& cfg) {
  std::optional<TmegParams> p;
  try {
    p = entangler_to_tmeg(e, r1, r2);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::invalid_params) throw;
    return {};
  }
  const HeraldedMetrics m = heralded_metrics(*p, target, cfg);
  return {m.probability, m.fidelity};
}

}  // namespace

double loss_pdf(double r, double r_opt, double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) fail(ErrorKind::invalid_argument, "loss_pdf: mu must be positive");
  if (r_opt == 0.0 || !std::isfinite(r_opt)) {
    fail(ErrorKind::invalid_argument, "loss_pdf: r_opt must be nonzero and finite");
  }
  if (r < std::min(0.0, r_opt) || r > std::max(0.0, r_opt)) return 0.0;
  const double sigma = std::abs(mu * r_opt);
  const double z = (r - r_opt) / sigma;
  const double norm = std::sqrt(2.0 / kPi) / (sigma * erf_eval(1.0 / (std::sqrt(2.0) * mu)));
  return norm * std::exp(-0.5 * z * z);
}

AveragedMetrics averaged_metrics(const OptimalEntangler& optimum, const SFTarget& target, double mu,
                                 const QuadratureConfig& cfg) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    fail(ErrorKind::invalid_argument, "averaged_metrics: mu must be finite and non-negative");
  }
  const double r1 = optimum.solution.r1;
  const double r2 = optimum.solution.r2;
  AveragedMetrics out;
  const PointMetrics exact = point_metrics(optimum.entangler, r1, r2, target, cfg);
  out.optimal_probability = exact.probability;
  if (mu == 0.0) {
    out.probability = exact.probability;
    out.fidelity = exact.fidelity;
    return out;
  }
  const LossAxis ax1 = loss_axis(r1, mu, cfg.loss_order);
  const LossAxis ax2 = loss_axis(r2, mu, cfg.loss_order);
  const std::size_t n2 = ax2.nodes.size();
  std::vector<PointMetrics> values(ax1.nodes.size() * n2);
  parallel_for(values.size(), [&](std::size_t k) {
    values[k] = point_metrics(optimum.entangler, ax1.nodes[k / n2], ax2.nodes[k % n2], target, cfg);
  });
  double p = 0.0;
  double f = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double w = ax1.weights[k / n2] * ax2.weights[k % n2];
    p += w * values[k].probability;
    f += w * values[k].fidelity;
  }
  out.probability = p;
  out.fidelity = f;
  return out;
}

AveragedMetrics averaged_metrics(EntanglerKind kind, const SFTarget& target, double mu,
                                 const QuadratureConfig& cfg) {
  return averaged_metrics(optimal_entangler(target, kind, cfg), target, mu, cfg);
}

FidelitySurface fidelity_surface(const OptimalEntangler& optimum, const SFTarget& target,
                                 std::span<const double> r1_grid, std::span<const double> r2_grid,
                                 const QuadratureConfig& cfg) {
  FidelitySurface s;
  s.r1.assign(r1_grid.begin(), r1_grid.end());
  s.r2.assign(r2_grid.begin(), r2_grid.end());
  const std::size_t n2 = s.r2.size();
  s.values.resize(s.r1.size() * n2);
  parallel_for(s.values.size(), [&](std::size_t k) {
    const double r1 = s.r1[k / n2];
    const double r2 = s.r2[k % n2];
    try {
      const TmegParams p = entangler_to_tmeg(optimum.entangler, r1, r2);
      s.values[k] = heralded_fidelity(p, target, cfg);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::invalid_params) throw;
    }
  });
  std::size_t present = 0;
  std::size_t plateau = 0;
  for (const auto& v : s.values) {
    if (!v) continue;
    ++present;
    if (*v >= kPlateauLevel) ++plateau;
  }
  s.plateau_fraction = present ? static_cast<double>(plateau) / static_cast<double>(present) : 0.0;
  return s;
}

}  // namespace sqzfock

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
#include "sqzfock/states.hpp"

namespace sqzfock {

namespace {

constexpr double kNormalizationTolerance = 1e-6;
constexpr double kSingularTolerance = 1e-12;

double log_a_n(int n) { return n * std::log(2.0) + log_factorial(n) + 0.5 * std::log(kPi); }

void require_same_grid(const Wavefunction& lhs, const Wavefunction& rhs, const char* who) {
  if (lhs.shared_grid() == rhs.shared_grid()) return;
  if (lhs.grid().nodes == rhs.grid().nodes && lhs.grid().weights == rhs.grid().weights) return;
  fail(ErrorKind::invalid_argument, std::string(who) + ": wavefunctions live on different grids");
}

}  // namespace

bool TmegParams::is_valid(cplx a, cplx b, cplx d) noexcept {
  const bool finite = std::isfinite(a.real()) && std::isfinite(a.imag()) && std::isfinite(b.real()) &&
                      std::isfinite(b.imag()) && std::isfinite(d.real()) && std::isfinite(d.imag());
  return finite && a.real() > 0.0 && d.real() > 0.0 && a.real() * d.real() - b.real() * b.real() > 0.0;
}

TmegParams TmegParams::create(cplx a, cplx b, cplx d) {
  if (!is_valid(a, b, d)) {
    fail(ErrorKind::invalid_params,
         "TMEG parameters violate Re a > 0, Re d > 0, Re a Re d - (Re b)^2 > 0");
  }
  return TmegParams(a, b, d);
}

double TmegParams::determinant() const noexcept {
  return a_.real() * d_.real() - b_.real() * b_.real();
}

SFTarget::SFTarget(int n, double squeezing, int cap) : n_(n), squeezing_(squeezing) {
  if (n < 0) fail(ErrorKind::invalid_argument, "SFTarget: negative photon number");
  if (n > cap) {
    fail(ErrorKind::capacity, "SFTarget: n=" + std::to_string(n) + " exceeds Fock capacity " +
                                  std::to_string(cap));
  }
  if (!std::isfinite(squeezing)) fail(ErrorKind::invalid_argument, "SFTarget: squeezing must be finite");
}

double SFTarget::log_norm_constant() const noexcept { return log_a_n(n_); }

Wavefunction::Wavefunction(std::shared_ptr<const Grid> grid, std::vector<cplx> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_ || grid_->size() != values_.size()) {
    fail(ErrorKind::invalid_argument, "Wavefunction: values do not match grid");
  }
}

double Wavefunction::norm_squared() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) acc += grid_->weights[i] * std::norm(values_[i]);
  return acc;
}

cplx Wavefunction::inner(const Wavefunction& other) const {
  require_same_grid(*this, other, "inner");
  cplx acc{};
  for (std::size_t i = 0; i < values_.size(); ++i) {
    acc += grid_->weights[i] * std::conj(values_[i]) * other.values_[i];
  }
  return acc;
}

Wavefunction Wavefunction::scaled(cplx factor) const {
  std::vector<cplx> v(values_);
  for (auto& x : v) x *= factor;
  return Wavefunction(grid_, std::move(v));
}

cplx tmeg_wavefunction(const TmegParams& p, double x1, double x2) {
  const double norm = std::pow(p.determinant(), 0.25) / std::sqrt(kPi);
  return norm * std::exp(-0.5 * (p.a() * x1 * x1 + 2.0 * p.b() * x1 * x2 + p.d() * x2 * x2));
}

double sf_wavefunction(const SFTarget& target, double x) {
  const double r = target.squeezing();
  const double y = std::exp(r) * x;
  const LogMagnitude h = log_hermite(target.n(), y);
  if (h.sign == 0) return 0.0;
  // e^{-y^2/2} H_n(y) / sqrt(A_n e^{-R})
  return h.sign * std::exp(h.log_abs - 0.5 * y * y - 0.5 * (target.log_norm_constant() - r));
}

Wavefunction tabulate_sf(const SFTarget& target, std::shared_ptr<const Grid> grid) {
  return Wavefunction::tabulate(std::move(grid), [&](double x) { return cplx(sf_wavefunction(target, x)); });
}

double tmeg_norm_squared(const TmegParams& p, const QuadratureConfig& cfg) {
  const auto rule = shared_gauss_hermite(cfg.order_per_axis);
  const double ra = p.a().real();
  const double rb = p.b().real();
  const double rd = p.d().real();
  const Grid outer = envelope_grid(*rule, rd - rb * rb / ra);
  double acc = 0.0;
  for (std::size_t j = 0; j < outer.size(); ++j) {
    const double x2 = outer.nodes[j];
    const Grid inner = envelope_grid(*rule, ra, -rb * x2 / ra);
    double row = 0.0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      row += inner.weights[i] * std::norm(tmeg_wavefunction(p, inner.nodes[i], x2));
    }
    acc += outer.weights[j] * row;
  }
  return acc;
}

std::shared_ptr<const Grid> output_grid(const TmegParams& p, const QuadratureConfig& cfg,
                                        double target_curvature) {
  double curvature = p.heralded_exponent().real();
  if (!(curvature > 0.0)) curvature = p.d().real();
  curvature = std::min(curvature, target_curvature);
  return std::make_shared<const Grid>(envelope_grid(*shared_gauss_hermite(cfg.order_1d), curvature));
}

const Wavefunction& ProjectionResult::state() const {
  if (!conditional) {
    fail(ErrorKind::unheraldable,
         "heralding probability " + std::to_string(probability) + " is below " +
             std::to_string(kUnheraldableProbability) + "; conditional state undefined");
  }
  return *conditional;
}

ProjectionResult project_fock(const TmegParams& p, int n, const QuadratureConfig& cfg) {
  return project_fock(p, n, output_grid(p, cfg), cfg);
}

std::vector<cplx> heralded_amplitude(const TmegParams& p, int n, std::span<const double> x2_nodes,
                                     const QuadratureConfig& cfg) {
  if (n < 0) fail(ErrorKind::invalid_argument, "heralded_amplitude: negative photon number");
  if (n > cfg.fock_cap) {
    fail(ErrorKind::capacity, "heralded_amplitude: n=" + std::to_string(n) + " exceeds Fock capacity " +
                                  std::to_string(cfg.fock_cap));
  }
  const auto rule = shared_gauss_hermite(cfg.order_1d);
  const double curvature = 0.5 * (1.0 + p.a().real());
  const double shift = p.b().real() / (1.0 + p.a().real());
  const double log_norm = 0.25 * std::log(p.determinant()) - 0.75 * std::log(kPi) -
                          0.5 * n * std::log(2.0) - 0.5 * log_factorial(n);
  const cplx a = p.a();
  const cplx b = p.b();
  const cplx d = p.d();

  std::vector<cplx> amp(x2_nodes.size());
  for (std::size_t j = 0; j < x2_nodes.size(); ++j) {
    const double x2 = x2_nodes[j];
    const Grid inner = envelope_grid(*rule, curvature, -shift * x2);
    const cplx tail = -0.5 * d * x2 * x2 + log_norm;
    cplx acc{};
    for (std::size_t i = 0; i < inner.size(); ++i) {
      const double x1 = inner.nodes[i];
      const LogMagnitude h = log_hermite(n, x1);
      if (h.sign == 0) continue;
      const cplx expo = h.log_abs - 0.5 * x1 * x1 - 0.5 * (a * x1 * x1 + 2.0 * b * x1 * x2) + tail;
      acc += inner.weights[i] * static_cast<double>(h.sign) * std::exp(expo);
    }
    amp[j] = acc;
  }
  return amp;
}

ProjectionResult project_fock(const TmegParams& p, int n, std::shared_ptr<const Grid> grid,
                              const QuadratureConfig& cfg) {
  std::vector<cplx> amp = heralded_amplitude(p, n, grid->nodes, cfg);
  ProjectionResult result;
  double prob = 0.0;
  for (std::size_t j = 0; j < grid->size(); ++j) prob += grid->weights[j] * std::norm(amp[j]);
  result.probability = prob;
  if (prob >= kUnheraldableProbability) {
    const double inv = 1.0 / std::sqrt(prob);
    for (auto& v : amp) v *= inv;
    result.conditional.emplace(std::move(grid), std::move(amp));
  }
  return result;
}

cplx output_wavefunction_closed_form(const TmegParams& p, int n, double probability, double x) {
  const cplx a = p.a();
  const cplx b = p.b();
  if (std::abs(a - 1.0) < kSingularTolerance || std::abs(a + 1.0) < kSingularTolerance) {
    fail(ErrorKind::singular, "closed-form heralded amplitude is singular at a = +-1");
  }
  if (!(probability > 0.0)) {
    fail(ErrorKind::unheraldable, "closed-form heralded amplitude needs a positive probability");
  }
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double scalar =
      sign * std::pow(p.determinant(), 0.25) * std::exp(-0.5 * (log_a_n(n) + std::log(probability)));
  const cplx ratio = std::sqrt(2.0 * std::pow(a - 1.0, n) / std::pow(a + 1.0, n + 1));
  const cplx beta = b / std::sqrt(a * a - 1.0);
  return scalar * ratio * std::exp(-0.5 * x * x * p.heralded_exponent()) * hermite(n, beta * x);
}

Wavefunction tabulate_closed_form(const TmegParams& p, int n, double probability,
                                  std::shared_ptr<const Grid> grid) {
  return Wavefunction::tabulate(std::move(grid), [&](double x) {
    return output_wavefunction_closed_form(p, n, probability, x);
  });
}

double fidelity_pure(const Wavefunction& psi1, const Wavefunction& psi2) {
  require_same_grid(psi1, psi2, "fidelity_pure");
  for (const Wavefunction* w : {&psi1, &psi2}) {
    const double n2 = w->norm_squared();
    if (std::abs(n2 - 1.0) > kNormalizationTolerance) {
      fail(ErrorKind::invalid_argument,
           "fidelity_pure: input not normalized (norm^2 = " + std::to_string(n2) + ")");
    }
  }
  return std::norm(psi1.inner(psi2));
}

Wavefunction align_phase(const Wavefunction& reference, const Wavefunction& other) {
  const cplx overlap = reference.inner(other);
  const double mag = std::abs(overlap);
  if (mag == 0.0) return other;
  return other.scaled(std::conj(overlap) / mag);
}

double max_abs_difference(const Wavefunction& lhs, const Wavefunction& rhs) {
  require_same_grid(lhs, rhs, "max_abs_difference");
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.values().size(); ++i) {
    worst = std::max(worst, std::abs(lhs.values()[i] - rhs.values()[i]));
  }
  return worst;
}

HeraldedMetrics heralded_metrics(const TmegParams& p, const SFTarget& target, const QuadratureConfig& cfg) {
  const ProjectionResult r = project_fock(p, target.n(), output_grid(p, cfg), cfg);
  if (!r.heraldable()) return {r.probability, 0.0};
  // The overlap integrand decays like exp(-(Re h + e^{2R}) x^2 / 2).
  double curvature = p.heralded_exponent().real();
  if (!(curvature > 0.0)) curvature = p.d().real();
  curvature = 0.5 * (curvature + std::exp(2.0 * target.squeezing()));
  const Grid g = envelope_grid(*shared_gauss_hermite(cfg.order_1d), curvature);
  const std::vector<cplx> amp = heralded_amplitude(p, target.n(), g.nodes, cfg);
  cplx overlap{};
  for (std::size_t i = 0; i < g.size(); ++i) overlap += g.weights[i] * amp[i] * sf_wavefunction(target, g.nodes[i]);
  return {r.probability, std::norm(overlap) / r.probability};
}

double heralded_fidelity(const TmegParams& p, const SFTarget& target, const QuadratureConfig& cfg) {
  return heralded_metrics(p, target, cfg).fidelity;
}

}  // namespace sqzfock

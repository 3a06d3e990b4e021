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

#include <Eigen/Core>
#include <cmath>
#include <string>

#include "sqzfock/error.hpp"
#include "sqzfock/imperfections.hpp"

namespace sqzfock {

namespace {

constexpr double kPreconditionTolerance = 1e-8;

void check_detector_inputs(const TmegParams& p, const SFTarget& target, double eta, const char* who) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    fail(ErrorKind::invalid_argument, std::string(who) + ": eta must lie in (0, 1]");
  }
  const double residual = universal_residuals(p, target.squeezing()).max_abs();
  if (!(residual < kPreconditionTolerance)) {
    fail(ErrorKind::invalid_argument, std::string(who) +
                                          ": parameters do not produce the target (residual " +
                                          std::to_string(residual) + ")");
  }
}

// Coefficients of the exponent -(1/2) x^T Q x of phi_n(x1) Psi(u, x2) Psi_vac(v),
// u = sqrt(eta) x1 + sqrt(1-eta) x3, v = sqrt(1-eta) x1 - sqrt(eta) x3, in (x1, x2, x3).
Eigen::Matrix3cd detector_form(const TmegParams& p, double eta) {
  const double te = std::sqrt(eta);
  const double tr = std::sqrt(1.0 - eta);
  const cplx a = p.a();
  const cplx b = p.b();
  Eigen::Matrix3cd q;
  q(0, 0) = a * eta + (1.0 - eta) + 1.0;
  q(0, 1) = b * te;
  q(0, 2) = (a - 1.0) * te * tr;
  q(1, 1) = p.d();
  q(1, 2) = b * tr;
  q(2, 2) = a * (1.0 - eta) + eta;
  q(1, 0) = q(0, 1);
  q(2, 0) = q(0, 2);
  q(2, 1) = q(1, 2);
  return q;
}

}  // namespace

double detector_fidelity_quadrature(const TmegParams& p, const SFTarget& target, double eta,
                                    const QuadratureConfig& cfg) {
  check_detector_inputs(p, target, eta, "detector_fidelity_quadrature");
  const int n = target.n();
  const auto rule = shared_gauss_hermite(cfg.order_per_axis);
  const Eigen::Matrix3cd q = detector_form(p, eta);
  const double te = std::sqrt(eta);
  const double tr = std::sqrt(1.0 - eta);
  const cplx a = p.a();
  const cplx b = p.b();
  const cplx d = p.d();
  const double log_norm =
      0.25 * std::log(p.determinant()) - std::log(kPi) - 0.5 * n * std::log(2.0) - 0.5 * log_factorial(n);

  const double inner_curv = 0.5 * q(0, 0).real();
  const double c12 = q(0, 1).real() / q(0, 0).real();
  const double c13 = q(0, 2).real() / q(0, 0).real();

  auto psi_out = [&](double x2, double x3) {
    const Grid g = envelope_grid(*rule, inner_curv, -(c12 * x2 + c13 * x3));
    cplx acc{};
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x1 = g.nodes[i];
      const LogMagnitude h = log_hermite(n, x1);
      if (h.sign == 0) continue;
      const double u = te * x1 + tr * x3;
      const double v = tr * x1 - te * x3;
      const cplx expo = h.log_abs - 0.5 * x1 * x1 - 0.5 * (a * u * u + 2.0 * b * u * x2 + d * x2 * x2) -
                        0.5 * v * v + log_norm;
      acc += g.weights[i] * static_cast<double>(h.sign) * std::exp(expo);
    }
    return acc;
  };

  // Remaining (x2, x3) form after the x1 integral.
  Eigen::Matrix2cd s;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) s(i, j) = q(i + 1, j + 1) - q(0, i + 1) * q(0, j + 1) / q(0, 0);
  }

  const Eigen::Matrix2d m = s.real();
  const Grid outer_n = envelope_grid(*rule, m(1, 1) - m(0, 1) * m(0, 1) / m(0, 0));
  double norm = 0.0;
  for (std::size_t k = 0; k < outer_n.size(); ++k) {
    const double x3 = outer_n.nodes[k];
    const Grid g2 = envelope_grid(*rule, m(0, 0), -m(0, 1) * x3 / m(0, 0));
    double row = 0.0;
    for (std::size_t j = 0; j < g2.size(); ++j) row += g2.weights[j] * std::norm(psi_out(g2.nodes[j], x3));
    norm += outer_n.weights[k] * row;
  }

  const double e2r = std::exp(2.0 * target.squeezing());
  const cplx t22 = s(0, 0) + e2r;
  const double overlap_curv = (s(1, 1) - s(0, 1) * s(0, 1) / t22).real();
  const Grid outer_f = envelope_grid(*rule, overlap_curv);
  double fid = 0.0;
  for (std::size_t k = 0; k < outer_f.size(); ++k) {
    const double x3 = outer_f.nodes[k];
    const Grid g2 = envelope_grid(*rule, 0.5 * t22.real(), -s(0, 1).real() * x3 / t22.real());
    cplx overlap{};
    for (std::size_t j = 0; j < g2.size(); ++j) {
      overlap += g2.weights[j] * psi_out(g2.nodes[j], x3) * sf_wavefunction(target, g2.nodes[j]);
    }
    fid += outer_f.weights[k] * std::norm(overlap);
  }
  return fid / norm;
}

double thinning_amplitude(int m, int detected, double eta) {
  if (m < 0 || detected < 0 || detected > m) {
    fail(ErrorKind::invalid_argument, "thinning_amplitude: need 0 <= M <= m");
  }
  if (!(eta >= 0.0 && eta <= 1.0)) fail(ErrorKind::invalid_argument, "thinning_amplitude: eta must lie in [0, 1]");
  const int lost = m - detected;
  const double sign = (lost % 2 == 0) ? 1.0 : -1.0;
  if (eta == 1.0) return lost == 0 ? 1.0 : 0.0;
  if (eta == 0.0) return detected == 0 ? sign : 0.0;
  const double log_binom = log_factorial(m) - log_factorial(detected) - log_factorial(lost);
  return sign * std::exp(0.5 * (log_binom + detected * std::log(eta) + lost * std::log1p(-eta)));
}

double detector_fidelity_fock(const TmegParams& p, const SFTarget& target, double eta, int n_max,
                              const QuadratureConfig& cfg) {
  check_detector_inputs(p, target, eta, "detector_fidelity_fock");
  if (n_max < target.n()) {
    fail(ErrorKind::invalid_argument, "detector_fidelity_fock: n_max below the heralded count");
  }
  return detector_fidelity_fock(fock_expand(p, n_max, cfg), target, eta, cfg);
}

double detector_fidelity_fock(const FockExpansion& fe, const SFTarget& target, double eta,
                              const QuadratureConfig& cfg) {
  if (!(eta > 0.0 && eta <= 1.0)) fail(ErrorKind::invalid_argument, "detector_fidelity_fock: eta must lie in (0, 1]");
  const int n = target.n();
  const int n_max = fe.n_max;
  if (n_max < n) fail(ErrorKind::invalid_argument, "detector_fidelity_fock: n_max below the heralded count");

  // <k|SF> for k <= n_max.
  const int order = std::max(cfg.order_1d, n_max + n + 40);
  const Grid g = envelope_grid(*shared_gauss_hermite(order), 0.5 * (std::exp(2.0 * target.squeezing()) + 1.0));
  Eigen::VectorXd sk = Eigen::VectorXd::Zero(n_max + 1);
  std::vector<double> phi(static_cast<std::size_t>(n_max) + 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    hermite_functions(g.nodes[i], phi);
    const double w = g.weights[i] * sf_wavefunction(target, g.nodes[i]);
    for (int k = 0; k <= n_max; ++k) sk(k) += w * phi[static_cast<std::size_t>(k)];
  }

  double num = 0.0;
  double den = 0.0;
  for (int m = n; m <= n_max; ++m) {
    const double weight = std::pow(thinning_amplitude(m, n, eta), 2);
    if (weight == 0.0) continue;
    const auto row = fe.coeffs.row(m);
    cplx amp{};
    for (int k = 0; k <= n_max; ++k) amp += sk(k) * row(k);
    num += weight * std::norm(amp);
    den += weight * row.squaredNorm();
  }
  if (!(den > 0.0)) fail(ErrorKind::unheraldable, "detector_fidelity_fock: outcome cannot be heralded");
  return num / den;
}

}  // namespace sqzfock

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
#include "sqzfock/protocol.hpp"

namespace sqzfock {

std::string_view to_string(EntanglerKind kind) noexcept {
  return kind == EntanglerKind::beam_splitter ? "bs" : "cz";
}

EntanglerSpec EntanglerSpec::beam_splitter(double t) {
  if (!(t > 0.0 && t < 1.0)) {
    fail(ErrorKind::invalid_argument, "beam splitter transmittance must lie in (0, 1), got " + std::to_string(t));
  }
  return EntanglerSpec(BeamSplitter{t});
}

EntanglerSpec EntanglerSpec::controlled_z(double g) {
  if (!(g >= 0.0) || !std::isfinite(g)) {
    fail(ErrorKind::invalid_argument, "CZ weight must be finite and >= 0, got " + std::to_string(g));
  }
  return EntanglerSpec(ControlledZ{g});
}

EntanglerSpec EntanglerSpec::make(EntanglerKind kind, double parameter) {
  return kind == EntanglerKind::beam_splitter ? beam_splitter(parameter) : controlled_z(parameter);
}

EntanglerKind EntanglerSpec::kind() const noexcept {
  return std::holds_alternative<BeamSplitter>(value_) ? EntanglerKind::beam_splitter
                                                      : EntanglerKind::controlled_z;
}

double EntanglerSpec::parameter() const noexcept {
  return std::visit([](const auto& v) -> double {
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, BeamSplitter>) {
      return v.t;
    } else {
      return v.g;
    }
  }, value_);
}

TmegParams entangler_to_tmeg(const EntanglerSpec& e, double r1, double r2) {
  const double u = std::exp(2.0 * r1);
  const double v = std::exp(2.0 * r2);
  if (const auto* bs = std::get_if<BeamSplitter>(&e.value())) {
    const double t = bs->t;
    return TmegParams::create(u * (1.0 - t) + v * t, std::sqrt((1.0 - t) * t) * (u - v),
                              u * t + v * (1.0 - t));
  }
  const double g = std::get<ControlledZ>(e.value()).g;
  return TmegParams::create(u, cplx(0.0, g), v);
}

double UniversalResiduals::max_abs() const noexcept { return std::max(std::abs(width), std::abs(ratio)); }

UniversalResiduals universal_residuals(const TmegParams& p, double squeezing) {
  const cplx a = p.a();
  const cplx b = p.b();
  const cplx a_minus = a - 1.0;
  const cplx a_plus = a + 1.0;
  const bool degenerate = std::abs(a_plus) < 1e-12 || std::abs(a_minus) < 1e-12;
  if (degenerate && b != 0.0) fail(ErrorKind::singular, "universal conditions are singular at a = +-1");
  const double target = std::exp(2.0 * squeezing);
  UniversalResiduals r;
  r.width = p.d() - b * b / a_plus - target;
  r.ratio = (degenerate ? cplx{} : b * b / (a_minus * a_plus)) - target;
  return r;
}

namespace detail {
InputSolution solve_beam_splitter(double t, const SFTarget& target);
}

InputSolution solve_inputs(const EntanglerSpec& e, const SFTarget& target) {
  const double big_r = target.squeezing();
  if (const auto* bs = std::get_if<BeamSplitter>(&e.value())) {
    return detail::solve_beam_splitter(bs->t, target);
  }
  const double g = std::get<ControlledZ>(e.value()).g;
  const double scale = std::exp(2.0 * big_r);
  if (g == 0.0) {
    fail(ErrorKind::infeasible, "CZ with g = 0 leaves the modes uncorrelated; no heralding possible");
  }
  // e^{4 r1} = 1 - g^2 e^{-2R} must be positive.
  const double quartic = -g * g / scale;
  if (!(quartic > -1.0)) {
    fail(ErrorKind::infeasible, "CZ weight g=" + std::to_string(g) + " needs g^2 < e^{2R} = " +
                                    std::to_string(scale));
  }
  InputSolution sol;
  sol.r1 = 0.25 * std::log1p(quartic);
  const double u = std::exp(2.0 * sol.r1);
  const double d = scale - g * g / (u + 1.0);
  if (!(d > 0.0)) {
    fail(ErrorKind::infeasible, "CZ solution needs e^{2 r2} > 0; got " + std::to_string(d));
  }
  sol.r2 = 0.5 * std::log(d);
  sol.residuals = universal_residuals(entangler_to_tmeg(e, sol.r1, sol.r2), big_r);
  if (!(sol.residuals.max_abs() < kResidualTolerance)) {
    fail(ErrorKind::infeasible, "CZ closed form at g=" + std::to_string(g) + " leaves residual " +
                                    std::to_string(sol.residuals.max_abs()) + " (a too close to 1)");
  }
  return sol;
}

Eigen::Matrix4d cz_symplectic(double g) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(2, 1) = g;
  m(3, 0) = g;
  return m;
}

Eigen::Matrix4d bloch_messiah_product(const CzDecomposition& dec) {
  const double tau = dec.tau;
  const double rho = dec.rho;
  const double root = std::sqrt(dec.s);
  Eigen::Matrix4d phase_out;
  phase_out << 1, 0, 0, 0,
               0, 0, 0, 1,
               0, 0, 1, 0,
               0, -1, 0, 0;
  Eigen::Matrix4d mix_out;
  mix_out << tau, rho, 0, 0,
             rho, -tau, 0, 0,
             0, 0, tau, rho,
             0, 0, rho, -tau;
  const Eigen::Matrix4d squeeze = Eigen::Vector4d(root, 1.0 / root, 1.0 / root, root).asDiagonal();
  Eigen::Matrix4d mix_in;
  mix_in << rho, tau, 0, 0,
            tau, -rho, 0, 0,
            0, 0, rho, tau,
            0, 0, tau, -rho;
  Eigen::Matrix4d phase_in;
  phase_in << 1, 0, 0, 0,
              0, 0, 0, -1,
              0, 0, 1, 0,
              0, 1, 0, 0;
  return phase_out * mix_out * squeeze * mix_in * phase_in;
}

CzDecomposition cz_decompose(double g) {
  if (!(g >= 0.0) || !std::isfinite(g)) fail(ErrorKind::invalid_argument, "cz_decompose: need g >= 0");
  CzDecomposition dec;
  // Smaller root of s^2 - (2 + g^2) s + 1 = 0, written without cancellation.
  dec.s = 2.0 / (2.0 + g * g + g * std::sqrt(4.0 + g * g));
  dec.rho = std::sqrt(dec.s / (1.0 + dec.s));
  dec.tau = std::sqrt(1.0 / (1.0 + dec.s));
  dec.r_an = 0.5 * std::log(dec.s);
  dec.reconstruction_error = (bloch_messiah_product(dec) - cz_symplectic(g)).cwiseAbs().maxCoeff();
  return dec;
}

double energy_cost(const EntanglerSpec& e, const InputSolution& sol) {
  auto sinh2 = [](double r) { return std::sinh(r) * std::sinh(r); };
  double cost = sinh2(sol.r1) + sinh2(sol.r2);
  if (const auto* cz = std::get_if<ControlledZ>(&e.value())) {
    cost += 2.0 * sinh2(cz_decompose(cz->g).r_an);
  }
  return cost;
}

double heralding_probability(const EntanglerSpec& e, double r1, double r2, int n,
                             const QuadratureConfig& cfg) {
  return project_fock(entangler_to_tmeg(e, r1, r2), n, cfg).probability;
}

double squeezing_to_db(double r) { return -20.0 / std::log(10.0) * std::abs(r); }

SqueezingRequirement input_squeezing(const OptimalEntangler& opt) {
  SqueezingRequirement req;
  req.r1_db = squeezing_to_db(opt.solution.r1);
  req.r2_db = squeezing_to_db(opt.solution.r2);
  req.max_db = std::min(req.r1_db, req.r2_db);
  if (const auto* cz = std::get_if<ControlledZ>(&opt.entangler.value())) {
    req.ancilla_db = squeezing_to_db(cz_decompose(cz->g).r_an);
    req.max_db = std::min(req.max_db, *req.ancilla_db);
  }
  return req;
}

double max_input_squeezing(const SFTarget& target, EntanglerKind kind, const QuadratureConfig& cfg) {
  return input_squeezing(optimal_entangler(target, kind, cfg)).max_db;
}

}  // namespace sqzfock

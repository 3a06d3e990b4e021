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

// Experimental imperfections: squeezing loss modelled as a truncated Gaussian
// spread of the input squeezings, and photon-number-resolving detectors with
// finite quantum efficiency (two independent models).

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sqzfock/config.hpp"
#include "sqzfock/protocol.hpp"
#include "sqzfock/states.hpp"

namespace sqzfock {

/// Density of an input squeezing r that was meant to be r_opt, with relative
/// spread mu, normalized on the segment between 0 and r_opt. Zero outside it.
double loss_pdf(double r, double r_opt, double mu);

struct AveragedMetrics {
  double probability = 0.0;          // averaged P_n
  double fidelity = 0.0;             // averaged F_n
  double optimal_probability = 0.0;  // P_n at the lossless optimum

  double probability_deficit() const noexcept { return optimal_probability - probability; }
  double relative_probability_deficit() const noexcept {
    return optimal_probability > 0.0 ? probability_deficit() / optimal_probability : 0.0;
  }
  double fidelity_deficit() const noexcept { return 1.0 - fidelity; }
};

/// Averages P_n and F_n over independent loss distributions of r1 and r2 by a
/// tensor Gauss-Legendre rule, with the entangler held at its lossless optimum.
/// mu = 0 returns the exact protocol values.
AveragedMetrics averaged_metrics(const OptimalEntangler& optimum, const SFTarget& target, double mu,
                                 const QuadratureConfig& cfg = {});
AveragedMetrics averaged_metrics(EntanglerKind kind, const SFTarget& target, double mu,
                                 const QuadratureConfig& cfg = {});

inline constexpr double kPlateauLevel = 0.99;

struct FidelitySurface {
  std::vector<double> r1;
  std::vector<double> r2;
  std::vector<std::optional<double>> values;  // row-major, values[i * r2.size() + j]
  double plateau_fraction = 0.0;              // share of present points with F >= 0.99

  const std::optional<double>& at(std::size_t i, std::size_t j) const { return values[i * r2.size() + j]; }
};

/// F_n on an r1 x r2 grid with the entangler fixed at `optimum`. Points whose
/// parameters are not a valid TMEG state are left empty.
FidelitySurface fidelity_surface(const OptimalEntangler& optimum, const SFTarget& target,
                                 std::span<const double> r1_grid, std::span<const double> r2_grid,
                                 const QuadratureConfig& cfg = {});

/// Fidelity with the target when the detector only sees a fraction eta of the
/// photons (beam splitter with a vacuum port), by nested quadrature in
/// position space. p must satisfy the universal conditions for the target.
double detector_fidelity_quadrature(const TmegParams& p, const SFTarget& target, double eta,
                                    const QuadratureConfig& cfg = {});

/// Amplitude for M of m photons to reach the detector; |A|^2 is the binomial
/// thinning weight C(m, M) eta^M (1 - eta)^{m - M}.
double thinning_amplitude(int m, int detected, double eta);

/// Same fidelity as detector_fidelity_quadrature, computed in the Fock basis
/// from a truncated expansion of p.
double detector_fidelity_fock(const TmegParams& p, const SFTarget& target, double eta, int n_max,
                              const QuadratureConfig& cfg = {});
/// Reuses an expansion of p, which must be the state the target was solved for.
double detector_fidelity_fock(const FockExpansion& expansion, const SFTarget& target, double eta,
                              const QuadratureConfig& cfg = {});

}  // namespace sqzfock

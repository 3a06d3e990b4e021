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

// Two-mode entangled Gaussian (TMEG) states, squeezed Fock (SF) targets,
// photon-number heralding and overlaps between tabulated wavefunctions.

#pragma once

#include <Eigen/Core>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "sqzfock/config.hpp"
#include "sqzfock/numerics.hpp"

namespace sqzfock {

/// Coefficients of Psi(x1, x2) ~ exp[-(a x1^2 + 2 b x1 x2 + d x2^2) / 2].
class TmegParams {
 public:
  /// Throws ErrorKind::invalid_params unless Re a > 0, Re d > 0 and
  /// Re a Re d - (Re b)^2 > 0.
  static TmegParams create(cplx a, cplx b, cplx d);
  static bool is_valid(cplx a, cplx b, cplx d) noexcept;

  cplx a() const noexcept { return a_; }
  cplx b() const noexcept { return b_; }
  cplx d() const noexcept { return d_; }

  /// Re a Re d - (Re b)^2, the determinant fixing the normalization.
  double determinant() const noexcept;

  /// d - b^2 / (a + 1): Gaussian exponent of the heralded mode-2 amplitude.
  cplx heralded_exponent() const noexcept { return d_ - b_ * b_ / (a_ + 1.0); }

 private:
  TmegParams(cplx a, cplx b, cplx d) : a_(a), b_(b), d_(d) {}
  cplx a_, b_, d_;
};

/// Target state S(R)|n>. Positive squeezing narrows the x quadrature.
class SFTarget {
 public:
  SFTarget(int n, double squeezing, int cap = kDefaultFockCap);

  int n() const noexcept { return n_; }
  double squeezing() const noexcept { return squeezing_; }

  /// log A_n with A_n = 2^n n! sqrt(pi).
  double log_norm_constant() const noexcept;

 private:
  int n_;
  double squeezing_;
};

/// A wavefunction tabulated on a quadrature grid that it shares with others.
class Wavefunction {
 public:
  Wavefunction(std::shared_ptr<const Grid> grid, std::vector<cplx> values);

  template <class F>
  static Wavefunction tabulate(std::shared_ptr<const Grid> grid, F&& f) {
    std::vector<cplx> v;
    v.reserve(grid->size());
    for (double x : grid->nodes) v.emplace_back(f(x));
    return Wavefunction(std::move(grid), std::move(v));
  }

  const Grid& grid() const noexcept { return *grid_; }
  const std::shared_ptr<const Grid>& shared_grid() const noexcept { return grid_; }
  std::span<const cplx> values() const noexcept { return values_; }

  double norm_squared() const;
  /// <this|other>; both must live on the same grid.
  cplx inner(const Wavefunction& other) const;
  Wavefunction scaled(cplx factor) const;

 private:
  std::shared_ptr<const Grid> grid_;
  std::vector<cplx> values_;
};

cplx tmeg_wavefunction(const TmegParams& p, double x1, double x2);

double sf_wavefunction(const SFTarget& target, double x);

Wavefunction tabulate_sf(const SFTarget& target, std::shared_ptr<const Grid> grid);

/// Integral of |Psi|^2 over the plane by nested Gauss-Hermite quadrature.
double tmeg_norm_squared(const TmegParams& p, const QuadratureConfig& cfg = {});

/// Grid for mode-2 wavefunctions heralded from p. Passing the curvature of a
/// target's |psi|^2 widens the grid so both fit.
std::shared_ptr<const Grid> output_grid(
    const TmegParams& p, const QuadratureConfig& cfg = {},
    double target_curvature = std::numeric_limits<double>::infinity());

inline constexpr double kUnheraldableProbability = 1e-14;

struct ProjectionResult {
  double probability = 0.0;
  std::optional<Wavefunction> conditional;  // empty when unheraldable

  bool heraldable() const noexcept { return conditional.has_value(); }
  /// The normalized heralded state; throws ErrorKind::unheraldable if absent.
  const Wavefunction& state() const;
};

/// Unnormalized Phi_n(x2) = integral phi_n(x1) Psi(x1, x2) dx1 at the given nodes.
std::vector<cplx> heralded_amplitude(const TmegParams& p, int n, std::span<const double> x2_nodes,
                                     const QuadratureConfig& cfg = {});

/// Heralds n photons in mode 1 by quadrature:
/// Phi_n(x2) = integral phi_n(x1) Psi(x1, x2) dx1, P_n = integral |Phi_n|^2.
ProjectionResult project_fock(const TmegParams& p, int n, const QuadratureConfig& cfg = {});
ProjectionResult project_fock(const TmegParams& p, int n, std::shared_ptr<const Grid> grid,
                              const QuadratureConfig& cfg = {});

/// Analytic heralded amplitude. Principal branches are used for every
/// fractional power, so it agrees with project_fock only up to a global phase.
/// Throws ErrorKind::singular for a = +-1.
cplx output_wavefunction_closed_form(const TmegParams& p, int n, double probability, double x);

Wavefunction tabulate_closed_form(const TmegParams& p, int n, double probability,
                                  std::shared_ptr<const Grid> grid);

/// |<psi1|psi2>|^2. Inputs must be normalized to within 1e-6.
double fidelity_pure(const Wavefunction& psi1, const Wavefunction& psi2);

/// Returns `other` multiplied by the phase that maximizes Re<reference|other>.
Wavefunction align_phase(const Wavefunction& reference, const Wavefunction& other);

double max_abs_difference(const Wavefunction& lhs, const Wavefunction& rhs);

/// Fidelity of the state heralded on n = target.n() against the target. The
/// norm and the overlap are each integrated on a grid fitted to their own
/// envelope. Returns 0 when the outcome cannot be heralded.
double heralded_fidelity(const TmegParams& p, const SFTarget& target,
                         const QuadratureConfig& cfg = {});

struct HeraldedMetrics {
  double probability = 0.0;
  double fidelity = 0.0;
};

/// P_n and the fidelity of heralded_fidelity from one projection.
HeraldedMetrics heralded_metrics(const TmegParams& p, const SFTarget& target,
                                 const QuadratureConfig& cfg = {});

inline constexpr double kDefaultTailThreshold = 1e-6;

struct FockExpansion {
  int n_max = 0;
  Eigen::MatrixXcd coeffs;  // coeffs(m, n) = <m|_1 <n|_2 |Psi>
  double tail_mass = 0.0;   // 1 - sum |C_mn|^2
};

/// Truncated two-mode Fock expansion by nested quadrature. Throws
/// TruncationError if the tail mass exceeds `tail_threshold`.
FockExpansion fock_expand(const TmegParams& p, int n_max, const QuadratureConfig& cfg = {},
                          double tail_threshold = kDefaultTailThreshold);

}  // namespace sqzfock

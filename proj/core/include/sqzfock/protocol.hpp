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

// The heralded generation protocol: entangler parameter maps, the universal
// solution conditions, heralding-probability optimization and resource costs.

#pragma once

#include <Eigen/Core>
#include <optional>
#include <string_view>
#include <variant>

#include "sqzfock/config.hpp"
#include "sqzfock/states.hpp"

namespace sqzfock {

enum class EntanglerKind { beam_splitter, controlled_z };

std::string_view to_string(EntanglerKind kind) noexcept;

struct BeamSplitter {
  double t;  // transmittance, t = cos(theta)
};

struct ControlledZ {
  double g;  // weight coefficient of exp(i g x1 x2)
};

class EntanglerSpec {
 public:
  /// Requires 0 < t < 1.
  static EntanglerSpec beam_splitter(double t);
  /// Requires g >= 0.
  static EntanglerSpec controlled_z(double g);
  static EntanglerSpec make(EntanglerKind kind, double parameter);

  EntanglerKind kind() const noexcept;
  /// t for a beam splitter, g for a CZ gate.
  double parameter() const noexcept;
  const std::variant<BeamSplitter, ControlledZ>& value() const noexcept { return value_; }

 private:
  explicit EntanglerSpec(std::variant<BeamSplitter, ControlledZ> v) : value_(v) {}
  std::variant<BeamSplitter, ControlledZ> value_;
};

/// BS: a = e^{2r1}(1-t) + e^{2r2} t, b = sqrt(t(1-t)) (e^{2r1} - e^{2r2}),
///     d = e^{2r1} t + e^{2r2} (1-t).
/// CZ: a = e^{2r1}, b = i g, d = e^{2r2}.
TmegParams entangler_to_tmeg(const EntanglerSpec& e, double r1, double r2);

/// Defects of the two universal-solution conditions for squeezing R.
struct UniversalResiduals {
  cplx width;  // d - b^2/(a+1) - e^{2R}
  cplx ratio;  // b^2/(a^2-1) - e^{2R}

  double max_abs() const noexcept;
};

/// Throws ErrorKind::singular when a^2 = 1 and b != 0; with b = 0 the ratio
/// term is taken as 0.
UniversalResiduals universal_residuals(const TmegParams& p, double squeezing);

inline constexpr double kResidualTolerance = 1e-10;

struct InputSolution {
  double r1 = 0.0;
  double r2 = 0.0;
  UniversalResiduals residuals{};
};

/// Input squeezings that make the heralded state exactly the target.
/// CZ is solved in closed form; BS by damped Newton from nine seeds.
/// Throws ErrorKind::infeasible when no accepted root exists.
InputSolution solve_inputs(const EntanglerSpec& e, const SFTarget& target);

/// Bloch-Messiah factors of the CZ symplectic matrix.
struct CzDecomposition {
  double s = 1.0;     // squeezing strength, in (0, 1]
  double tau = 0.0;   // beam-splitter transmittance amplitude
  double rho = 0.0;   // beam-splitter reflectance amplitude
  double r_an = 0.0;  // ancilla squeezing, e^{2 r_an} = s
  double reconstruction_error = 0.0;  // max entry of |product - CZ matrix|
};

/// Quadrature map (x1, x2, y1, y2) -> (x1, x2, y1 + g x2, y2 + g x1).
Eigen::Matrix4d cz_symplectic(double g);

/// Phase shifter * beam splitter * squeezer * beam splitter * phase shifter.
Eigen::Matrix4d bloch_messiah_product(const CzDecomposition& dec);

CzDecomposition cz_decompose(double g);

/// sinh^2 of every squeezer in the setup; the CZ gate adds two ancillae.
double energy_cost(const EntanglerSpec& e, const InputSolution& sol);

/// Heralding probability P_n for the state produced by (e, r1, r2).
double heralding_probability(const EntanglerSpec& e, double r1, double r2, int n,
                             const QuadratureConfig& cfg = {});

struct OptimalEntangler {
  EntanglerSpec entangler;
  InputSolution solution;
  double probability = 0.0;
};

inline constexpr int kOptimizerGridPoints = 64;
inline constexpr double kOptimizerTolerance = 1e-6;

/// Maximizes P_n over t in (0, 1) or g in (0, e^R) on the universal-solution
/// manifold: a 64-point grid followed by golden-section refinement. Ties go
/// to the smaller t or g.
OptimalEntangler optimal_entangler(const SFTarget& target, EntanglerKind kind,
                                   const QuadratureConfig& cfg = {});

/// 10 log10(e^{-2|r|}); negative values are squeezing below vacuum.
double squeezing_to_db(double r);

inline constexpr double kSqueezingBudgetDb = -15.0;

struct SqueezingRequirement {
  double r1_db = 0.0;
  double r2_db = 0.0;
  std::optional<double> ancilla_db;  // CZ only, counted twice
  double max_db = 0.0;               // most negative of the above

  bool within(double budget_db = kSqueezingBudgetDb) const noexcept { return max_db >= budget_db; }
};

SqueezingRequirement input_squeezing(const OptimalEntangler& opt);

/// Most demanding input squeezing (dB) at the optimal entangler.
double max_input_squeezing(const SFTarget& target, EntanglerKind kind,
                           const QuadratureConfig& cfg = {});

}  // namespace sqzfock

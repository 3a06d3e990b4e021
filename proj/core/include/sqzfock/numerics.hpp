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

// Special functions and deterministic quadrature shared by every other module.

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace sqzfock {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Largest Fock index accepted by fock_mode_function unless a caller widens it.
inline constexpr int kDefaultFockCap = 60;

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence
/// H_{k+1} = 2x H_k - 2k H_{k-1}.
double hermite(int n, double x);
cplx hermite(int n, cplx z);

struct LogMagnitude {
  double log_abs;  // -inf when the value is exactly zero
  int sign;        // -1, 0 or +1
};

/// log|H_n(x)| with sign; the recurrence is rescaled on the fly so the result
/// stays finite where H_n itself would overflow.
LogMagnitude log_hermite(int n, double x);

double log_factorial(int n);

/// Harmonic-oscillator eigenfunction <x|n>, assembled in log space.
/// Throws ErrorKind::capacity for n > cap.
double fock_mode_function(int n, double x, int cap = kDefaultFockCap);

/// Writes phi_0(x) ... phi_{out.size()-1}(x) using the orthonormal recurrence.
void hermite_functions(double x, std::span<double> out);

enum class QuadratureKind { gauss_hermite, gauss_legendre };

class QuadratureRule {
 public:
  QuadratureKind kind() const noexcept { return kind_; }
  int order() const noexcept { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const noexcept { return nodes_; }

  /// Gauss-Hermite: weights against e^{-x^2} (these underflow to zero at the
  /// outer nodes of large rules). Gauss-Legendre: ordinary weights.
  std::span<const double> weights() const noexcept { return weights_; }

  /// Weights for integrating a plain f: sum_i plain_weights[i] * f(nodes[i]).
  /// For Gauss-Hermite these are w_i e^{x_i^2}, computed without overflow.
  std::span<const double> plain_weights() const noexcept { return plain_weights_; }

  friend QuadratureRule gauss_hermite_rule(int order);
  friend QuadratureRule gauss_legendre_rule(int order, double lo, double hi);

 private:
  QuadratureRule(QuadratureKind kind, std::vector<double> nodes, std::vector<double> weights,
                 std::vector<double> plain_weights)
      : kind_(kind),
        nodes_(std::move(nodes)),
        weights_(std::move(weights)),
        plain_weights_(std::move(plain_weights)) {}

  QuadratureKind kind_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> plain_weights_;
};

QuadratureRule gauss_hermite_rule(int order);
QuadratureRule gauss_legendre_rule(int order, double lo, double hi);

/// Process-wide cache of Gauss-Hermite rules; rules are immutable once built.
std::shared_ptr<const QuadratureRule> shared_gauss_hermite(int order);

template <class F>
auto integrate(const QuadratureRule& rule, F&& f) {
  using R = decltype(f(0.0));
  R acc{};
  const auto x = rule.nodes();
  const auto w = rule.plain_weights();
  for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * f(x[i]);
  return acc;
}

/// A concrete set of abscissae and weights: integral of f ~ sum w_i f(x_i).
struct Grid {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Gauss-Hermite rule stretched for an integrand whose envelope is
/// exp(-curvature * (x - center)^2). curvature must be positive.
Grid envelope_grid(const QuadratureRule& gauss_hermite, double curvature, double center = 0.0);

/// Error function, accurate to ~1 ulp.
double erf_eval(double x);

}  // namespace sqzfock

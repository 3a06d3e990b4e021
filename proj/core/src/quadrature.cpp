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
#include <map>
#include <mutex>
#include <string>

#include "sqzfock/error.hpp"
#include "sqzfock/numerics.hpp"

namespace sqzfock {

namespace {

constexpr int kMaxNewton = 100;

// phi_n(z) and phi_{n-1}(z) by the orthonormal recurrence.
std::pair<double, double> hermite_function_pair(int n, double z) {
  double p1 = std::exp(-0.5 * z * z) / std::sqrt(std::sqrt(kPi));
  double p2 = 0.0;
  for (int j = 0; j < n; ++j) {
    const double p3 = p2;
    p2 = p1;
    p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
  }
  return {p1, p2};
}

}  // namespace

QuadratureRule gauss_hermite_rule(int order) {
  if (order < 2) fail(ErrorKind::invalid_argument, "gauss_hermite_rule: order must be >= 2");
  const int n = order;
  const int half = (n + 1) / 2;
  std::vector<double> x(n), plain(n), w(n);
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    // Initial guesses for the largest roots first (Numerical Recipes, gauher).
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[i - 2];
    }
    if (n % 2 == 1 && i == half - 1) z = 0.0;
    bool converged = false;
    for (int it = 0; it < kMaxNewton; ++it) {
      const auto [phi_n, phi_nm1] = hermite_function_pair(n, z);
      const double slope = std::sqrt(2.0 * n) * phi_nm1 - z * phi_n;
      const double step = phi_n / slope;
      z -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      fail(ErrorKind::convergence, "gauss_hermite_rule: Newton failed for order " + std::to_string(n));
    }
    const double phi_nm1 = hermite_function_pair(n, z).second;
    x[i] = z;
    x[n - 1 - i] = -z;
    plain[i] = plain[n - 1 - i] = 1.0 / (n * phi_nm1 * phi_nm1);
  }
  if (n % 2 == 1) x[half - 1] = 0.0;
  // Ascending order.
  std::reverse(x.begin(), x.end());
  std::reverse(plain.begin(), plain.end());
  for (int i = 0; i < n; ++i) w[i] = plain[i] * std::exp(-x[i] * x[i]);
  return QuadratureRule(QuadratureKind::gauss_hermite, std::move(x), std::move(w), std::move(plain));
}

QuadratureRule gauss_legendre_rule(int order, double lo, double hi) {
  if (order < 2) fail(ErrorKind::invalid_argument, "gauss_legendre_rule: order must be >= 2");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
    fail(ErrorKind::invalid_argument, "gauss_legendre_rule: need finite lo < hi");
  }
  const int n = order;
  const int half = (n + 1) / 2;
  const double mid = 0.5 * (hi + lo);
  const double rad = 0.5 * (hi - lo);
  std::vector<double> x(n), w(n);
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    bool converged = false;
    for (int it = 0; it < kMaxNewton; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / pp;
      z -= step;
      if (std::abs(step) <= 1e-16) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      fail(ErrorKind::convergence, "gauss_legendre_rule: Newton failed for order " + std::to_string(n));
    }
    if (n % 2 == 1 && i == half - 1) z = 0.0;
    x[i] = mid - rad * z;
    x[n - 1 - i] = mid + rad * z;
    w[i] = w[n - 1 - i] = 2.0 * rad / ((1.0 - z * z) * pp * pp);
  }
  std::vector<double> plain = w;
  return QuadratureRule(QuadratureKind::gauss_legendre, std::move(x), std::move(w), std::move(plain));
}

std::shared_ptr<const QuadratureRule> shared_gauss_hermite(int order) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const QuadratureRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_shared<const QuadratureRule>(gauss_hermite_rule(order));
  return slot;
}

Grid envelope_grid(const QuadratureRule& gauss_hermite, double curvature, double center) {
  if (gauss_hermite.kind() != QuadratureKind::gauss_hermite) {
    fail(ErrorKind::invalid_argument, "envelope_grid: needs a Gauss-Hermite rule");
  }
  if (!(curvature > 0.0) || !std::isfinite(curvature)) {
    fail(ErrorKind::invalid_argument, "envelope_grid: curvature must be positive");
  }
  const double sigma = 1.0 / std::sqrt(curvature);
  Grid g;
  g.nodes.reserve(gauss_hermite.order());
  g.weights.reserve(gauss_hermite.order());
  const auto y = gauss_hermite.nodes();
  const auto w = gauss_hermite.plain_weights();
  for (std::size_t i = 0; i < y.size(); ++i) {
    g.nodes.push_back(center + sigma * y[i]);
    g.weights.push_back(sigma * w[i]);
  }
  return g;
}

}  // namespace sqzfock

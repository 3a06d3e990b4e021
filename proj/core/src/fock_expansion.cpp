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
#include <vector>

#include "sqzfock/error.hpp"
#include "sqzfock/states.hpp"

namespace sqzfock {

FockExpansion fock_expand(const TmegParams& p, int n_max, const QuadratureConfig& cfg,
                          double tail_threshold) {
  if (n_max < 0) fail(ErrorKind::invalid_argument, "fock_expand: negative truncation");
  const int dim = n_max + 1;
  // Gauss-Hermite is exact for polynomial degree 2N-1 once the envelope is
  // matched, so the order has to track the truncation.
  const int order = std::max(cfg.order_per_axis, n_max + 40);
  const auto rule = shared_gauss_hermite(order);

  const double inner_curvature = 0.5 * (1.0 + p.a().real());
  const double shift = p.b().real() / (1.0 + p.a().real());
  double outer_curvature = 0.5 * (1.0 + p.heralded_exponent().real());
  if (!(outer_curvature > 0.5)) outer_curvature = 0.5 * (1.0 + p.d().real());
  const Grid outer = envelope_grid(*rule, outer_curvature);

  // heralded(m, j) = integral phi_m(x1) Psi(x1, x2_j) dx1
  Eigen::MatrixXcd heralded = Eigen::MatrixXcd::Zero(dim, static_cast<Eigen::Index>(outer.size()));
  Eigen::MatrixXd phi2(dim, static_cast<Eigen::Index>(outer.size()));
  std::vector<double> table(dim);
  for (std::size_t j = 0; j < outer.size(); ++j) {
    const double x2 = outer.nodes[j];
    const auto col = static_cast<Eigen::Index>(j);
    const Grid inner = envelope_grid(*rule, inner_curvature, -shift * x2);
    for (std::size_t i = 0; i < inner.size(); ++i) {
      const double x1 = inner.nodes[i];
      hermite_functions(x1, table);
      const cplx kernel = inner.weights[i] * tmeg_wavefunction(p, x1, x2);
      for (int m = 0; m < dim; ++m) heralded(m, col) += table[m] * kernel;
    }
    hermite_functions(x2, table);
    for (int n = 0; n < dim; ++n) phi2(n, col) = outer.weights[j] * table[n];
  }

  FockExpansion out;
  out.n_max = n_max;
  out.coeffs = heralded * phi2.transpose().cast<cplx>();
  const double captured = out.coeffs.squaredNorm();
  double tail = 1.0 - captured;
  if (tail < 0.0) {
    if (tail < -1e-8) {
      fail(ErrorKind::convergence,
           "fock_expand: captured norm " + std::to_string(captured) + " exceeds 1; quadrature too coarse");
    }
    tail = 0.0;
  }
  out.tail_mass = tail;
  if (tail > tail_threshold) {
    throw TruncationError(tail, "fock_expand: tail mass " + std::to_string(tail) + " above threshold " +
                                    std::to_string(tail_threshold) + " at n_max=" + std::to_string(n_max));
  }
  return out;
}

}  // namespace sqzfock

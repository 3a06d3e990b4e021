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

#pragma once

#include "sqzfock/numerics.hpp"

namespace sqzfock {

/// Quadrature orders used throughout the library. Every order can be raised
/// from the command line; doubled() is what the convergence checks compare to.
struct QuadratureConfig {
  int order_1d = 120;        // Gauss-Hermite order for wavefunction tabulation
  int order_per_axis = 80;   // per-axis order for nested 2-D and 3-D integrals
  int loss_order = 64;       // Gauss-Legendre order per axis for loss averaging
  int fock_cap = kDefaultFockCap;

  QuadratureConfig doubled() const {
    QuadratureConfig c = *this;
    c.order_1d *= 2;
    c.order_per_axis *= 2;
    c.loss_order *= 2;
    return c;
  }
};

}  // namespace sqzfock

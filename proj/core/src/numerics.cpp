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

#include <cmath>
#include <limits>
#include <string>

#include "sqzfock/error.hpp"
#include "sqzfock/numerics.hpp"

namespace sqzfock {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::invalid_params: return "invalid-params";
    case ErrorKind::singular: return "singular";
    case ErrorKind::unheraldable: return "unheraldable";
    case ErrorKind::truncation: return "truncation";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::convergence: return "convergence";
  }
  return "unknown";
}

namespace {

template <class T>
T hermite_recurrence(int n, T x) {
  if (n < 0) fail(ErrorKind::invalid_argument, "hermite: negative order");
  T prev{1.0};
  if (n == 0) return prev;
  T cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    T next = 2.0 * x * cur - 2.0 * static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

double hermite(int n, double x) { return hermite_recurrence(n, x); }

cplx hermite(int n, cplx z) { return hermite_recurrence(n, z); }

LogMagnitude log_hermite(int n, double x) {
  if (n < 0) fail(ErrorKind::invalid_argument, "log_hermite: negative order");
  constexpr double kBig = 0x1p+500;
  constexpr int kShift = 500;
  double prev = 1.0;
  double cur = n == 0 ? 1.0 : 2.0 * x;
  long exponent = 0;  // value = cur * 2^exponent
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kBig) {
      cur = std::ldexp(cur, -kShift);
      prev = std::ldexp(prev, -kShift);
      exponent += kShift;
    }
  }
  if (cur == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
  return {std::log(std::abs(cur)) + static_cast<double>(exponent) * std::log(2.0), cur > 0 ? 1 : -1};
}

double log_factorial(int n) {
  if (n < 0) fail(ErrorKind::invalid_argument, "log_factorial: negative argument");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double fock_mode_function(int n, double x, int cap) {
  if (n < 0) fail(ErrorKind::invalid_argument, "fock_mode_function: negative Fock index");
  if (n > cap) {
    fail(ErrorKind::capacity, "fock_mode_function: n=" + std::to_string(n) +
                                  " exceeds Fock capacity " + std::to_string(cap));
  }
  const LogMagnitude h = log_hermite(n, x);
  if (h.sign == 0) return 0.0;
  const double log_norm =
      -0.25 * std::log(kPi) - 0.5 * n * std::log(2.0) - 0.5 * log_factorial(n);
  return h.sign * std::exp(h.log_abs + log_norm - 0.5 * x * x);
}

void hermite_functions(double x, std::span<double> out) {
  if (out.empty()) return;
  out[0] = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(kPi));
  if (out.size() == 1) return;
  out[1] = std::sqrt(2.0) * x * out[0];
  for (std::size_t k = 1; k + 1 < out.size(); ++k) {
    const double kk = static_cast<double>(k);
    out[k + 1] = std::sqrt(2.0 / (kk + 1.0)) * x * out[k] - std::sqrt(kk / (kk + 1.0)) * out[k - 1];
  }
}

double erf_eval(double x) { return std::erf(x); }

}  // namespace sqzfock

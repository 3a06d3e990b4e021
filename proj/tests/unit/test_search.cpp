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

#include <doctest.h>

#include <cmath>
#include <optional>

#include "sqzfock/error.hpp"
#include "sqzfock/search.hpp"

using namespace sqzfock;

TEST_SUITE("search") {
  TEST_CASE("finds a smooth interior maximum") {
    const SearchResult r = grid_golden_maximize([](double x) { return std::optional(-(x - 0.3) * (x - 0.3)); }, 0.0,
                                                1.0, 64, 1e-8);
    CHECK(r.argmax == doctest::Approx(0.3).epsilon(1e-7));
    CHECK(r.value <= 0.0);
    CHECK(r.evaluations > 64);
  }

  TEST_CASE("skips undefined regions") {
    auto f = [](double x) -> std::optional<double> {
      if (x < 0.5) return std::nullopt;
      return std::sin(3.0 * x);
    };
    const SearchResult r = grid_golden_maximize(f, 0.0, 2.0, 64, 1e-9);
    CHECK(r.argmax == doctest::Approx(std::acos(-1.0) / 6.0).epsilon(1e-7));
  }

  TEST_CASE("ties go to the smaller parameter") {
    const SearchResult flat = grid_golden_maximize([](double) { return std::optional(1.0); }, 0.0, 1.0, 9, 1e-6);
    CHECK(flat.value == 1.0);
    CHECK(flat.argmax < 0.2);
    // Two equal peaks at 0.25 and 0.75.
    auto twin = [](double x) { return std::optional(-std::pow((x - 0.25) * (x - 0.75), 2)); };
    CHECK(grid_golden_maximize(twin, 0.0, 1.0, 64, 1e-9).argmax == doctest::Approx(0.25).epsilon(1e-4));
  }

  TEST_CASE("errors") {
    auto none = [](double) -> std::optional<double> { return std::nullopt; };
    try {
      grid_golden_maximize(none, 0.0, 1.0, 16, 1e-6);
      FAIL("expected infeasible");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::infeasible);
    }
    CHECK_THROWS_AS(grid_golden_maximize(none, 1.0, 0.0, 16, 1e-6), Error);
    CHECK_THROWS_AS(grid_golden_maximize(none, 0.0, 1.0, 0, 1e-6), Error);
  }
}

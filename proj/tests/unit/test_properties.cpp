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

#include "oracles.hpp"
#include "sqzfock/error.hpp"
#include "sqzfock/imperfections.hpp"
#include "sqzfock/protocol.hpp"

using namespace sqzfock;

namespace {

constexpr int kTrials = 12;

struct Universal {
  SFTarget target;
  TmegParams params;
};

Universal random_cz_universal(oracle::SplitMix& rng) {
  const int n = rng.integer(0, 3);
  const double big_r = rng.uniform(0.1, 1.5);
  const double g = rng.uniform(0.05, 0.95) * std::exp(big_r);
  const EntanglerSpec e = EntanglerSpec::controlled_z(g);
  const SFTarget target(n, big_r);
  const InputSolution sol = solve_inputs(e, target);
  return {target, entangler_to_tmeg(e, sol.r1, sol.r2)};
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("random TMEG states are normalized and their heralding probabilities sum to at most one") {
    oracle::SplitMix rng(0x5eed0001);
    for (int trial = 0; trial < kTrials; ++trial) {
      const oracle::RandomTmeg r = oracle::random_tmeg(rng);
      const TmegParams p = TmegParams::create(r.a, r.b, r.d);
      CHECK(tmeg_norm_squared(p) == doctest::Approx(1.0).epsilon(1e-10));
      double total = 0.0;
      for (int n = 0; n <= 30; ++n) {
        const double prob = project_fock(p, n).probability;
        CHECK(prob >= 0.0);
        total += prob;
      }
      CHECK(total <= 1.0 + 1e-10);
    }
  }

  TEST_CASE("heralded probability matches the independent integral") {
    oracle::SplitMix rng(0x5eed0002);
    for (int trial = 0; trial < kTrials; ++trial) {
      const oracle::RandomTmeg r = oracle::random_tmeg(rng);
      const int n = rng.integer(0, 4);
      const TmegParams p = TmegParams::create(r.a, r.b, r.d);
      const double expect = oracle::heralding_probability(r.a, r.b, r.d, n);
      CHECK(project_fock(p, n).probability == doctest::Approx(expect).epsilon(1e-8).scale(1e-12));
    }
  }

  TEST_CASE("heralded fidelity never exceeds one") {
    oracle::SplitMix rng(0x5eed0003);
    for (int trial = 0; trial < kTrials; ++trial) {
      const oracle::RandomTmeg r = oracle::random_tmeg(rng);
      const SFTarget target(rng.integer(0, 3), rng.uniform(-1.0, 1.5));
      const HeraldedMetrics m = heralded_metrics(TmegParams::create(r.a, r.b, r.d), target);
      CHECK(m.fidelity >= 0.0);
      CHECK(m.fidelity <= 1.0 + 1e-9);
    }
  }

  TEST_CASE("CZ universal solutions herald the target exactly") {
    oracle::SplitMix rng(0x5eed0004);
    for (int trial = 0; trial < kTrials; ++trial) {
      Universal u = random_cz_universal(rng);
      CAPTURE(u.target.n());
      CAPTURE(u.target.squeezing());
      CHECK(universal_residuals(u.params, u.target.squeezing()).max_abs() < kResidualTolerance);
      const HeraldedMetrics m = heralded_metrics(u.params, u.target);
      CHECK(m.fidelity == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(m.probability ==
            doctest::Approx(oracle::universal_probability(u.params.a().real(), u.target.n())).epsilon(1e-9));
    }
  }

  TEST_CASE("BS universal solutions satisfy the quadratic and keep the total squeezing") {
    oracle::SplitMix rng(0x5eed0005);
    int solved = 0;
    for (int trial = 0; trial < 3 * kTrials; ++trial) {
      const double t = rng.uniform(0.02, 0.98);
      const SFTarget target(rng.integer(1, 3), rng.uniform(0.2, 1.4));
      const EntanglerSpec e = EntanglerSpec::beam_splitter(t);
      InputSolution sol;
      try {
        sol = solve_inputs(e, target);
      } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::infeasible);
        continue;
      }
      ++solved;
      CAPTURE(t);
      CHECK(sol.residuals.max_abs() < kResidualTolerance);
      CHECK(sol.r1 + sol.r2 == doctest::Approx(target.squeezing()).epsilon(1e-9));
      const double w = std::exp(4.0 * sol.r1);
      bool matched = false;
      for (double root : oracle::bs_u_squared_roots(t, target.squeezing())) {
        matched = matched || std::abs(root - w) < 1e-7 * std::max(1.0, w);
      }
      CHECK(matched);
      const TmegParams p = entangler_to_tmeg(e, sol.r1, sol.r2);
      const HeraldedMetrics m = heralded_metrics(p, target);
      CHECK(m.fidelity == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(m.probability ==
            doctest::Approx(oracle::universal_probability(p.a().real(), target.n())).epsilon(1e-9));
    }
    CHECK(solved >= kTrials);
  }

  TEST_CASE("closed-form heralded state agrees with quadrature on universal solutions") {
    oracle::SplitMix rng(0x5eed0006);
    for (int trial = 0; trial < kTrials; ++trial) {
      Universal u = random_cz_universal(rng);
      const auto grid = output_grid(u.params);
      const ProjectionResult pr = project_fock(u.params, u.target.n(), grid);
      REQUIRE(pr.heraldable());
      const Wavefunction closed = tabulate_closed_form(u.params, u.target.n(), pr.probability, grid);
      const Wavefunction aligned = align_phase(pr.state(), closed);
      CHECK(max_abs_difference(pr.state(), aligned) < 1e-9);
    }
  }

  TEST_CASE("CZ decomposition reconstructs the gate") {
    oracle::SplitMix rng(0x5eed0007);
    for (int trial = 0; trial < 50; ++trial) {
      const double g = rng.uniform(0.0, 5.0);
      const CzDecomposition dec = cz_decompose(g);
      CHECK(dec.reconstruction_error < 1e-12);
      CHECK(dec.s > 0.0);
      CHECK(dec.s <= 1.0);
      CHECK(dec.tau * dec.tau + dec.rho * dec.rho == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(std::abs(dec.s * dec.s - (2.0 + g * g) * dec.s + 1.0) < 1e-12);
    }
  }

  TEST_CASE("CZ solutions need less squeezing energy than BS at the optimum") {
    oracle::SplitMix rng(0x5eed0008);
    for (int trial = 0; trial < 4; ++trial) {
      const SFTarget target(rng.integer(1, 3), rng.uniform(0.25, 1.0));
      const OptimalEntangler bs = optimal_entangler(target, EntanglerKind::beam_splitter);
      const OptimalEntangler cz = optimal_entangler(target, EntanglerKind::controlled_z);
      CHECK(energy_cost(cz.entangler, cz.solution) < energy_cost(bs.entangler, bs.solution));
      CHECK(bs.probability == doctest::Approx(oracle::max_probability(target.n())).epsilon(1e-8));
      CHECK(cz.probability == doctest::Approx(oracle::max_probability(target.n())).epsilon(1e-8));
    }
  }

  TEST_CASE("detector fidelity follows the thinning closed form and is bounded below by eta^(n+1)") {
    oracle::SplitMix rng(0x5eed0009);
    for (int trial = 0; trial < kTrials; ++trial) {
      Universal u = random_cz_universal(rng);
      if (u.target.n() == 0) continue;
      const double eta = rng.uniform(0.5, 1.0);
      const double f = detector_fidelity_quadrature(u.params, u.target, eta);
      const int n = u.target.n();
      CHECK(f == doctest::Approx(oracle::universal_detector_fidelity(u.params.a().real(), n, eta)).epsilon(1e-7));
      CHECK(f >= std::pow(eta, n + 1) - 1e-9);
      CHECK(f <= 1.0 + 1e-9);
    }
  }

  TEST_CASE("thinning weights form a binomial distribution") {
    oracle::SplitMix rng(0x5eed000a);
    for (int trial = 0; trial < 50; ++trial) {
      const int m = rng.integer(0, 200);
      const double eta = rng.uniform(0.0, 1.0);
      double total = 0.0, mean = 0.0;
      for (int k = 0; k <= m; ++k) {
        const double w = std::pow(thinning_amplitude(m, k, eta), 2);
        total += w;
        mean += k * w;
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-11));
      CHECK(mean == doctest::Approx(m * eta).epsilon(1e-10).scale(1.0));
    }
  }

  TEST_CASE("loss density integrates to one") {
    oracle::SplitMix rng(0x5eed000b);
    for (int trial = 0; trial < kTrials; ++trial) {
      const double r_opt = rng.uniform(0.1, 2.0) * (rng.integer(0, 1) ? 1.0 : -1.0);
      const double mu = rng.uniform(0.02, 0.5);
      const double lo = std::min(0.0, r_opt), hi = std::max(0.0, r_opt);
      const double total = oracle::simpson([&](double r) { return loss_pdf(r, r_opt, mu); }, lo, hi, 20000);
      CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

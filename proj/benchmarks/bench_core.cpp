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

#include <benchmark/benchmark.h>

#include "sqzfock/imperfections.hpp"
#include "sqzfock/numerics.hpp"
#include "sqzfock/protocol.hpp"

using namespace sqzfock;

namespace {

TmegParams optimum_params(EntanglerKind kind, int n, double big_r) {
  const OptimalEntangler o = optimal_entangler(SFTarget(n, big_r), kind);
  return entangler_to_tmeg(o.entangler, o.solution.r1, o.solution.r2);
}

void BM_GaussHermiteRule(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_hermite_rule(order));
}
BENCHMARK(BM_GaussHermiteRule)->Arg(40)->Arg(120)->Arg(240);

void BM_GaussLegendreRule(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_legendre_rule(order, 0.0, 1.0));
}
BENCHMARK(BM_GaussLegendreRule)->Arg(64)->Arg(128);

void BM_ProjectFock(benchmark::State& state) {
  const TmegParams p = TmegParams::create(1.7, cplx(0.3, 0.4), 2.1);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(project_fock(p, n).probability);
}
BENCHMARK(BM_ProjectFock)->Arg(1)->Arg(3)->Arg(10);

void BM_HeraldedMetrics(benchmark::State& state) {
  const TmegParams p = optimum_params(EntanglerKind::controlled_z, 1, 1.0);
  const SFTarget target(1, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(heralded_metrics(p, target).fidelity);
}
BENCHMARK(BM_HeraldedMetrics);

void BM_OptimalEntangler(benchmark::State& state) {
  const SFTarget target(1, 1.0);
  const auto kind = state.range(0) == 0 ? EntanglerKind::beam_splitter : EntanglerKind::controlled_z;
  for (auto _ : state) benchmark::DoNotOptimize(optimal_entangler(target, kind).probability);
}
BENCHMARK(BM_OptimalEntangler)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FockExpand(benchmark::State& state) {
  const TmegParams p = optimum_params(EntanglerKind::controlled_z, 1, 0.5);
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fock_expand(p, n_max).tail_mass);
}
BENCHMARK(BM_FockExpand)->Arg(80)->Arg(160)->Unit(benchmark::kMillisecond);

void BM_DetectorQuadrature(benchmark::State& state) {
  const TmegParams p = optimum_params(EntanglerKind::controlled_z, 1, 0.5);
  const SFTarget target(1, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(detector_fidelity_quadrature(p, target, 0.9));
}
BENCHMARK(BM_DetectorQuadrature)->Unit(benchmark::kMillisecond);

void BM_DetectorFock(benchmark::State& state) {
  const TmegParams p = optimum_params(EntanglerKind::controlled_z, 1, 0.5);
  const SFTarget target(1, 0.5);
  const FockExpansion fe = fock_expand(p, 160);
  for (auto _ : state) benchmark::DoNotOptimize(detector_fidelity_fock(fe, target, 0.9));
}
BENCHMARK(BM_DetectorFock)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

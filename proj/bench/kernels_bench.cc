// Copyright 2026 The PRVO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Serial reference kernels against their OpenMP forms. Both produce
// bit-identical results; only wall time differs.

#include <benchmark/benchmark.h>

#include "prvo/montecarlo.h"
#include "prvo/simulator.h"

namespace prvo {
namespace {

UncertainPair bench_pair() {
  UncertainPair u;
  u.pi = {{0, 0}, Cov2::iso(0.05)};
  u.pj = {{6, 1}, {0.04, 0.01, 0.02}};
  u.vi = {{1, 0}, Cov2::iso(0.01)};
  u.vj = {{-0.5, 0.2}, Cov2::iso(0.02)};
  u.actuation_cov = Cov2::iso(0.03);
  u.R = 1.0;
  return u;
}

Scenario bench_scenario() {
  Scenario s;
  s.k = 1.0;
  s.n_candidates = 16;
  s.max_steps = 60;
  s.seed = 7;
  s.validate_samples = 2000;
  const Vec2 starts[] = {{5, 0}, {-2.5, 4.330127018922193}, {-2.5, -4.330127018922193}};
  for (const Vec2& p : starts) {
    RobotSpec r;
    r.start = p;
    r.goal = -p;
    r.pos_cov = Cov2::iso(0.01);
    r.vel_cov = r.actuation_cov = Cov2::iso(0.0025);
    s.robots.push_back(r);
  }
  return s;
}

Execution execution(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::kSerial : Execution::kParallel;
}

void BM_McMoments(benchmark::State& state) {
  const UncertainPair u = bench_pair();
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_moments(u, {0.7, 0.2}, state.range(1), 1, execution(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_McMoments)->ArgNames({"parallel", "n"})->ArgsProduct({{0, 1}, {1 << 14, 1 << 17}});

void BM_EmpiricalEta(benchmark::State& state) {
  const UncertainPair u = bench_pair();
  for (auto _ : state) {
    benchmark::DoNotOptimize(empirical_eta(u, {0.7, 0.2}, state.range(1), 1, execution(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_EmpiricalEta)->ArgNames({"parallel", "n"})->ArgsProduct({{0, 1}, {1 << 14, 1 << 17}});

void BM_Run(benchmark::State& state) {
  const Scenario s = bench_scenario();
  for (auto _ : state) benchmark::DoNotOptimize(run(s, execution(state)));
}
BENCHMARK(BM_Run)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace prvo

BENCHMARK_MAIN();

// Copyright 2026 The ctxval authors
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

#include "ctxval/scenarios.hpp"

using namespace ctxval;

static void BM_JacobiEigh(benchmark::State& state) {
  Rng rng(1);
  const CMatrix h = random_hermitian(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobi_eigh(h));
  }
}
BENCHMARK(BM_JacobiEigh)->Arg(4)->Arg(8)->Arg(16);

static void BM_FinestPartitions(benchmark::State& state) {
  const PeresFixture fx = peres_contexts();
  for (auto _ : state) {
    benchmark::DoNotOptimize(finest_partitions(fx.alpha, fx.delta));
  }
}
BENCHMARK(BM_FinestPartitions);

static void BM_ChangeUnitary(benchmark::State& state) {
  const PeresFixture fx = peres_contexts();
  for (auto _ : state) {
    benchmark::DoNotOptimize(change_unitary(fx.xi, fx.delta));
  }
}
BENCHMARK(BM_ChangeUnitary);

static void BM_PrepareEnsemble(benchmark::State& state) {
  const PeresFixture fx = peres_contexts();
  ModelConfig cfg;
  cfg.state = fx.singlet;
  cfg.base_context = fx.xi;
  cfg.n_samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(prepare(cfg));
  }
}
BENCHMARK(BM_PrepareEnsemble)->Arg(1000)->Arg(10000);

static void BM_ExtendHistory(benchmark::State& state) {
  const PeresFixture fx = peres_contexts();
  ModelConfig cfg;
  cfg.state = fx.singlet;
  cfg.base_context = fx.xi;
  cfg.n_samples = 1000;
  const LabeledEnsemble le = prepare(cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(extend_history(le, fx.delta));
  }
}
BENCHMARK(BM_ExtendHistory);

static void BM_AssignValue(benchmark::State& state) {
  const PeresFixture fx = peres_contexts();
  ModelConfig cfg;
  cfg.state = fx.singlet;
  cfg.base_context = fx.xi;
  cfg.n_samples = static_cast<std::size_t>(state.range(0));
  const LabeledEnsemble le =
      extend_history(extend_history(prepare(cfg), fx.delta), fx.alpha);
  const CMatrix sx_i = kron(sigma_x(), CMatrix::identity(2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assign_value(le, sx_i));
  }
}
BENCHMARK(BM_AssignValue)->Arg(10000);

static void BM_AssignValuePullback(benchmark::State& state) {
  const PeresFixture fx = peres_contexts();
  ModelConfig cfg;
  cfg.state = fx.singlet;
  cfg.base_context = fx.xi;
  cfg.n_samples = static_cast<std::size_t>(state.range(0));
  const LabeledEnsemble le =
      extend_history(extend_history(prepare(cfg), fx.delta), fx.alpha);
  const CMatrix sx_i = kron(sigma_x(), CMatrix::identity(2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assign_value_pullback(le, sx_i));
  }
}
BENCHMARK(BM_AssignValuePullback)->Arg(10000);

static void BM_PeresRun(benchmark::State& state) {
  ScenarioConfig cfg;
  cfg.n_samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_peres(cfg));
  }
}
BENCHMARK(BM_PeresRun)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

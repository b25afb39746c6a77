// Copyright 2026 The sgdual Authors
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

#include <cstdint>
#include <numbers>

#include <benchmark/benchmark.h>

#include "sgdual/engines.hpp"
#include "sgdual/runner.hpp"

namespace {

using namespace sgdual;

constexpr double kPi = std::numbers::pi;

StageConfig stage_config(int stage) {
    StageConfig config;
    config.stage = stage;
    config.initial = prepare_qubit(kPi / 4.0, 0.0);
    if (stage == 3) config.em = default_physics();
    return config;
}

void BM_Trial(benchmark::State& state, EngineKind kind, int stage, BhsiParams params) {
    const StageConfig config = stage_config(stage);
    std::uint64_t trial = 0;
    for (auto _ : state) {
        TrialRng rng(99, trial++);
        benchmark::DoNotOptimize(run_trial(kind, config, params, rng));
    }
    state.SetItemsProcessed(state.iterations());
}

const BhsiParams kQuiet{};
const BhsiParams kBusy{0.05, 0.03, 0.02, 0.3, RetrocausalMode::Unitary};

BENCHMARK_CAPTURE(BM_Trial, ci_splitter, EngineKind::CI, 1, kQuiet);
BENCHMARK_CAPTURE(BM_Trial, ci_full_loop, EngineKind::CI, 2, kQuiet);
BENCHMARK_CAPTURE(BM_Trial, ci_double_loop, EngineKind::CI, 3, kQuiet);
BENCHMARK_CAPTURE(BM_Trial, mwi_splitter, EngineKind::MWI, 1, kQuiet);
BENCHMARK_CAPTURE(BM_Trial, bhsi_quiet_splitter, EngineKind::BHSI, 1, kQuiet);
BENCHMARK_CAPTURE(BM_Trial, bhsi_busy_splitter, EngineKind::BHSI, 1, kBusy);
BENCHMARK_CAPTURE(BM_Trial, bhsi_busy_full_loop, EngineKind::BHSI, 2, kBusy);
BENCHMARK_CAPTURE(BM_Trial, bhsi_busy_double_loop, EngineKind::BHSI, 3, kBusy);

// Whole-run cost including classification, tallying and the audit, at one
// and at four workers.
void BM_Run(benchmark::State& state) {
    ExperimentConfig cfg;
    cfg.stage_config = stage_config(2);
    cfg.engine = EngineKind::BHSI;
    cfg.bhsi = kBusy;
    cfg.trials = static_cast<std::uint64_t>(state.range(0));
    cfg.seed = 1234;
    const RunOptions options{static_cast<int>(state.range(1))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(run(cfg, options));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.trials));
}
BENCHMARK(BM_Run)
    ->Args({100000, 1})
    ->Args({100000, 4})
    ->UseRealTime()
    ->Unit(benchmark::kMillisecond);

}  // namespace

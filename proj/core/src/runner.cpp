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

#include "sgdual/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "sgdual/engines.hpp"
#include "sgdual/rng.hpp"
#include "sgdual/stages.hpp"

namespace sgdual {

namespace {

constexpr double kThetaReadTolerance = 1e-9;

/// Per-worker aggregation state; merged in worker order at the end, though
/// any order would give the same counts.
struct Partial {
    explicit Partial(bool ts_inserted) : audit(ts_inserted) {}

    std::vector<std::uint64_t> label_counts = std::vector<std::uint64_t>(32, 0);
    Histogram patterns;
    std::uint64_t born_left = 0;
    std::uint64_t born_right = 0;
    AuditAccumulator audit;
};

void tally(Partial& partial, const ClickRecord& record, const OutcomeClass& outcome) {
    partial.label_counts[static_cast<std::size_t>(outcome.label)] += 1;
    partial.patterns[format_pattern(record)] += 1;
    if (record.stage == 1) {
        if (record.od_left) ++partial.born_left;
        if (record.od_right) ++partial.born_right;
    } else if (record.od_spin_fired) {
        if (std::abs(record.od_theta) <= kThetaReadTolerance) {
            ++partial.born_left;
        } else if (std::abs(record.od_theta - std::numbers::pi / 2.0) <= kThetaReadTolerance) {
            ++partial.born_right;
        }
    }
    partial.audit.add(record);
}

}  // namespace

RunReport run(const ExperimentConfig& config, const RunOptions& options) {
    config.validate();
    const int workers = std::max(1, options.workers);
    const StageConfig& stage = config.stage_config;
    const double expected_phase = stage.expected_phase();

    const auto classify_record = [&](const ClickRecord& r) {
        switch (stage.stage) {
            case 2: return classify_stage2(r, stage.ts_inserted);
            case 3: return classify_stage3(r, expected_phase, -1.0, stage.ts_inserted);
            default: return classify_stage1(r);
        }
    };

    std::vector<Partial> partials(static_cast<std::size_t>(workers),
                                  Partial(stage.ts_inserted));
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(workers));

    const auto work = [&](int worker_index, std::uint64_t begin, std::uint64_t end) {
        Partial& partial = partials[static_cast<std::size_t>(worker_index)];
        try {
            for (std::uint64_t trial = begin; trial < end; ++trial) {
                TrialRng rng(config.seed, trial);
                const ClickRecord record = run_trial(config.engine, stage, config.bhsi, rng);
                tally(partial, record, classify_record(record));
            }
        } catch (...) {
            failures[static_cast<std::size_t>(worker_index)] = std::current_exception();
        }
    };

    // Contiguous trial ranges per worker; the split has no effect on the
    // result because trial streams are index-derived.
    const std::uint64_t per_worker = config.trials / static_cast<std::uint64_t>(workers);
    const std::uint64_t remainder = config.trials % static_cast<std::uint64_t>(workers);
    if (workers == 1) {
        work(0, 0, config.trials);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        std::uint64_t begin = 0;
        for (int w = 0; w < workers; ++w) {
            const std::uint64_t count =
                per_worker + (static_cast<std::uint64_t>(w) < remainder ? 1 : 0);
            pool.emplace_back(work, w, begin, begin + count);
            begin += count;
        }
        for (std::thread& t : pool) t.join();
    }
    for (const std::exception_ptr& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }

    Partial total(stage.ts_inserted);
    for (const Partial& partial : partials) {
        for (std::size_t i = 0; i < total.label_counts.size(); ++i) {
            total.label_counts[i] += partial.label_counts[i];
        }
        for (const auto& [pattern, count] : partial.patterns) total.patterns[pattern] += count;
        total.born_left += partial.born_left;
        total.born_right += partial.born_right;
        total.audit.merge(partial.audit);
    }

    RunReport report;
    report.trial_count = config.trials;
    for (std::size_t i = 0; i < total.label_counts.size(); ++i) {
        if (total.label_counts[i] == 0) continue;
        const auto label = static_cast<OutcomeLabel>(i);
        report.label_histogram[std::string(to_string(label))] = total.label_counts[i];
    }
    report.pattern_histogram = std::move(total.patterns);
    report.born_left = total.born_left;
    report.born_right = total.born_right;
    report.born_tested = (total.born_left + total.born_right) > 0;
    if (report.born_tested) {
        report.born_test =
            born_rule_test(total.born_left, total.born_right, stage.initial.theta);
    }
    for (const auto& [label, count] : report.label_histogram) {
        report.anomaly_rates[label] = anomaly_rate(count, config.trials);
    }
    report.audit = total.audit.report();
    report.seed = config.seed;
    report.config_digest = config_digest(config);
    return report;
}

}  // namespace sgdual

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

#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include <doctest.h>

#include "sgdual/engines.hpp"
#include "sgdual/stats.hpp"

using namespace sgdual;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

StageConfig splitter(double theta, double phi = 0.0) {
    StageConfig c;
    c.stage = 1;
    c.initial = prepare_qubit(theta, phi);
    return c;
}

StageConfig full_loop(double theta) {
    StageConfig c;
    c.stage = 2;
    c.initial = prepare_qubit(theta, 0.0);
    return c;
}

StageConfig double_loop(double theta) {
    StageConfig c;
    c.stage = 3;
    c.initial = prepare_qubit(theta, 0.0);
    c.em = default_physics();
    return c;
}

Histogram pattern_histogram(EngineKind kind, const StageConfig& config, const BhsiParams& params,
                            std::uint64_t trials, std::uint64_t seed) {
    Histogram hist;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        TrialRng rng(seed, trial);
        hist[format_pattern(run_trial(kind, config, params, rng))] += 1;
    }
    return hist;
}

}  // namespace

TEST_SUITE("engines") {

TEST_CASE("engine and mode names round trip") {
    CHECK(parse_engine_kind("ci") == EngineKind::CI);
    CHECK(parse_engine_kind("MWI") == EngineKind::MWI);
    CHECK(parse_engine_kind("Bhsi") == EngineKind::BHSI);
    CHECK_FALSE(parse_engine_kind("copenhagen").has_value());
    for (const EngineKind kind : {EngineKind::CI, EngineKind::MWI, EngineKind::BHSI}) {
        CHECK(parse_engine_kind(to_string(kind)) == kind);
    }
    CHECK(parse_retrocausal_mode("unitary") == RetrocausalMode::Unitary);
    CHECK(parse_retrocausal_mode("ERASURE") == RetrocausalMode::Erasure);
    CHECK_FALSE(parse_retrocausal_mode("both").has_value());
}

TEST_CASE("anomaly knob validation") {
    BhsiParams p;
    CHECK_NOTHROW(p.validate());
    p.p_delayed = 1.2;
    CHECK_THROWS_AS(p.validate(), std::domain_error);
    p.p_delayed = -0.1;
    CHECK_THROWS_AS(p.validate(), std::domain_error);
    p = BhsiParams{0.5, 0.4, 0.3, 0.0, RetrocausalMode::Unitary};
    CHECK_THROWS_AS(p.validate(), std::domain_error);
    p = BhsiParams{0.5, 0.3, 0.2, 1.0, RetrocausalMode::Unitary};
    CHECK_NOTHROW(p.validate());

    TrialRng rng(1, 0);
    const BhsiParams bad{2.0, 0.0, 0.0, 0.0, RetrocausalMode::Unitary};
    CHECK_THROWS_AS(run_trial_bhsi(splitter(0.0), bad, rng), std::domain_error);
}

TEST_CASE("identical inputs replay identical records") {
    const StageConfig config = splitter(kPi / 3.0, 0.7);
    const BhsiParams params{0.1, 0.1, 0.1, 0.5, RetrocausalMode::Erasure};
    for (const EngineKind kind : {EngineKind::CI, EngineKind::MWI, EngineKind::BHSI}) {
        for (std::uint64_t trial = 0; trial < 200; ++trial) {
            TrialRng a(99, trial);
            TrialRng b(99, trial);
            CAPTURE(trial);
            REQUIRE(format_pattern(run_trial(kind, config, params, a)) ==
                    format_pattern(run_trial(kind, config, params, b)));
        }
    }
}

TEST_CASE("the two global engines sample identically") {
    const StageConfig config = splitter(kPi / 6.0);
    for (std::uint64_t trial = 0; trial < 500; ++trial) {
        TrialRng a(123, trial);
        TrialRng b(123, trial);
        REQUIRE(format_pattern(run_trial_ci(config, a)) ==
                format_pattern(run_trial_mwi(config, b)));
    }
}

TEST_CASE("a pure up state always takes the left path") {
    const StageConfig config = splitter(0.0);
    for (std::uint64_t trial = 0; trial < 1000; ++trial) {
        TrialRng rng(7, trial);
        REQUIRE(format_pattern(run_trial_ci(config, rng)) == "[1,0;1,0]");
    }
}

TEST_CASE("collapse emits only aligned full-loop outcomes") {
    const StageConfig config = full_loop(kPi / 4.0);
    const Histogram hist = pattern_histogram(EngineKind::CI, config, {}, 20000, 11);
    REQUIRE(hist.size() == 2);
    CHECK(hist.count("[1,0;0]") == 1);
    CHECK(hist.count("[0,1;pi/2]") == 1);
}

TEST_CASE("global engines never read the merged angle after a TS fire") {
    for (const EngineKind kind : {EngineKind::CI, EngineKind::MWI}) {
        const Histogram hist = pattern_histogram(kind, full_loop(kPi / 4.0), {}, 20000, 13);
        for (const auto& [pattern, count] : hist) {
            (void)count;
            CAPTURE(pattern);
            REQUIRE(pattern.find("pi/4") == std::string::npos);
        }
    }
}

TEST_CASE("stage-1 outcomes stay on the Born marginal for every engine") {
    const double theta = kPi / 6.0;
    const std::uint64_t trials = 100000;
    const double sigma3 = 3.0 * std::sqrt(0.75 * 0.25 / double(trials));

    const BhsiParams mixed{0.3, 0.2, 0.1, 0.0, RetrocausalMode::Unitary};
    const std::vector<std::pair<EngineKind, BhsiParams>> engines = {
        {EngineKind::CI, {}},
        {EngineKind::MWI, {}},
        {EngineKind::BHSI, {}},
        {EngineKind::BHSI, mixed},
    };
    for (const auto& [kind, params] : engines) {
        std::uint64_t left = 0;
        for (std::uint64_t trial = 0; trial < trials; ++trial) {
            TrialRng rng(555, trial);
            const ClickRecord r = run_trial(kind, splitter(theta), params, rng);
            REQUIRE(r.od_left + r.od_right == 1);
            left += r.od_left ? 1 : 0;
        }
        CAPTURE(to_string(kind));
        CHECK(std::abs(double(left) / double(trials) - 0.75) < sigma3);
    }
}

TEST_CASE("full-loop trials always reach the bottom detector") {
    const BhsiParams params{0.2, 0.2, 0.2, 0.4, RetrocausalMode::Unitary};
    for (const int stage : {2, 3}) {
        const StageConfig config = stage == 2 ? full_loop(kPi / 4.0) : double_loop(kPi / 4.0);
        for (std::uint64_t trial = 0; trial < 5000; ++trial) {
            TrialRng rng(77, trial);
            const ClickRecord r = run_trial_bhsi(config, params, rng);
            REQUIRE(r.od_spin_fired);
            REQUIRE_FALSE(r.od_left);
            REQUIRE_FALSE(r.od_right);
        }
    }
}

TEST_CASE("saturated delayed choice swaps every TS") {
    const BhsiParams params{1.0, 0.0, 0.0, 0.0, RetrocausalMode::Unitary};
    const Histogram hist =
        pattern_histogram(EngineKind::BHSI, splitter(kPi / 4.0), params, 100000, 21);
    REQUIRE(hist.size() == 2);
    const double sigma3 = 3.0 * std::sqrt(0.25 / 100000.0);
    CHECK(std::abs(double(hist.at("[1,0;0,1]")) / 100000.0 - 0.5) < sigma3);
    CHECK(std::abs(double(hist.at("[0,1;1,0]")) / 100000.0 - 0.5) < sigma3);
}

TEST_CASE("saturated uncommitted choice silences both TSs") {
    const BhsiParams params{0.0, 1.0, 0.0, 0.0, RetrocausalMode::Unitary};
    const Histogram hist =
        pattern_histogram(EngineKind::BHSI, splitter(kPi / 4.0), params, 20000, 22);
    REQUIRE(hist.size() == 2);
    CHECK(hist.count("[0,0;1,0]") == 1);
    CHECK(hist.count("[0,0;0,1]") == 1);
}

TEST_CASE("saturated double commitment fires both TSs") {
    const BhsiParams params{0.0, 0.0, 1.0, 0.0, RetrocausalMode::Unitary};
    const Histogram hist =
        pattern_histogram(EngineKind::BHSI, splitter(kPi / 4.0), params, 20000, 23);
    REQUIRE(hist.size() == 2);
    CHECK(hist.count("[1,1;1,0]") == 1);
    CHECK(hist.count("[1,1;0,1]") == 1);
}

TEST_CASE("certain recoherence reads the restored superposition") {
    const BhsiParams params{0.0, 0.0, 0.0, 1.0, RetrocausalMode::Unitary};
    for (std::uint64_t trial = 0; trial < 5000; ++trial) {
        TrialRng rng(31, trial);
        const ClickRecord r = run_trial_bhsi(full_loop(kPi / 4.0), params, rng);
        REQUIRE(r.od_theta == Approx(kPi / 4.0).epsilon(1e-9));
        REQUIRE(r.ts_left + r.ts_right == 1);
    }
}

TEST_CASE("recohered double-loop records carry the phase only in unitary mode") {
    const double expected = em_phase_shift(default_physics());
    BhsiParams params{0.0, 0.0, 0.0, 1.0, RetrocausalMode::Unitary};
    for (std::uint64_t trial = 0; trial < 2000; ++trial) {
        TrialRng rng(32, trial);
        const ClickRecord r = run_trial_bhsi(double_loop(kPi / 4.0), params, rng);
        REQUIRE(r.od_theta == Approx(kPi / 4.0).epsilon(1e-9));
        REQUIRE(r.od_phi == Approx(expected).epsilon(1e-12));
    }
    params.retrocausal_mode = RetrocausalMode::Erasure;
    for (std::uint64_t trial = 0; trial < 2000; ++trial) {
        TrialRng rng(32, trial);
        const ClickRecord r = run_trial_bhsi(double_loop(kPi / 4.0), params, rng);
        REQUIRE(r.od_phi == 0.0);
    }
}

TEST_CASE("delayed commits on the loop never remerge") {
    const BhsiParams params{1.0, 0.0, 0.0, 1.0, RetrocausalMode::Unitary};
    Histogram hist = pattern_histogram(EngineKind::BHSI, full_loop(kPi / 4.0), params, 5000, 33);
    for (const auto& [pattern, count] : hist) {
        (void)count;
        CAPTURE(pattern);
        REQUIRE(pattern.find("pi/4") == std::string::npos);
    }
}

TEST_CASE("the control run is deterministic and merged") {
    StageConfig config = full_loop(kPi / 4.0);
    config.ts_inserted = false;
    for (const EngineKind kind : {EngineKind::CI, EngineKind::MWI, EngineKind::BHSI}) {
        TrialRng rng(44, 0);
        const ClickRecord r = run_trial(kind, config, {}, rng);
        CAPTURE(to_string(kind));
        CHECK(format_pattern(r) == "[0,0;pi/4]");
    }

    StageConfig em_config = double_loop(kPi / 4.0);
    em_config.ts_inserted = false;
    TrialRng rng(44, 1);
    const ClickRecord r = run_trial_ci(em_config, rng);
    CHECK(r.od_theta == Approx(kPi / 4.0).epsilon(1e-9));
    CHECK(r.od_phi == Approx(em_phase_shift(default_physics())).epsilon(1e-12));
}

TEST_CASE("baseline anomaly knobs reproduce the global statistics") {
    const StageConfig config = splitter(kPi / 4.0);
    const Histogram ci = pattern_histogram(EngineKind::CI, config, {}, 100000, 61);
    const Histogram bhsi = pattern_histogram(EngineKind::BHSI, config, {}, 100000, 62);
    const Chi2Result result = engine_equivalence(ci, bhsi);
    CHECK(result.p > 0.001);
}

TEST_CASE("a visible anomaly rate separates the engines") {
    const StageConfig config = splitter(kPi / 4.0);
    const BhsiParams params{0.05, 0.0, 0.0, 0.0, RetrocausalMode::Unitary};
    const Histogram ci = pattern_histogram(EngineKind::CI, config, {}, 100000, 63);
    const Histogram bhsi = pattern_histogram(EngineKind::BHSI, config, params, 100000, 64);
    const Chi2Result result = engine_equivalence(ci, bhsi);
    CHECK(result.p < 1e-6);
}

}  // TEST_SUITE
